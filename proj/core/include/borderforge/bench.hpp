#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "borderforge/bba.hpp"
#include "borderforge/oracle.hpp"

namespace borderforge {

/// Solver configuration by name: bba, ibba, ibba+fge, obba, obba+fge.
/// bba and plain ibba/obba use the naive eliminator.
struct VariantSpec {
  std::string name;
  Variant base = Variant::Ibba;
  Elimination elimination = Elimination::Naive;
  bool oracle = false;
};

/// Throws ConfigError for unknown names.
VariantSpec parse_variant_spec(const std::string& name);

struct SuiteConfig {
  std::vector<std::uint32_t> fields{31};
  std::vector<std::size_t> nvars{3};
  std::vector<unsigned> degrees{2};  // generator degree D
  std::size_t count = 10;            // instances per (p, n, D)
  std::uint64_t seed = 0;
  std::size_t rows = 0;              // 0 means n + 1
  unsigned transform_degree = 1;
  std::size_t transform_terms = 10;
  std::optional<unsigned> degree_cap;
  std::vector<std::string> variants{"ibba", "ibba+fge"};
  std::string oracle = "perfect";
  OracleConfig oracle_config;
  std::size_t last_k = 5;
  std::size_t threads = 0;  // 0: hardware concurrency, capped by BORDERFORGE_THREADS
  bool border_gap = true;   // reference BBA run for the gap trace
};

/// Reads the TOML suite file. Throws IoError or ConfigError.
SuiteConfig load_suite(const std::string& path);
SuiteConfig parse_suite(const std::string& text);

struct VariantResult {
  std::string name;
  double wall_seconds = 0;
  std::uint64_t ops = 0;
  std::uint64_t final_stage_ops = 0;
  std::size_t zero_reductions = 0;
  std::size_t final_stage_zero_reductions = 0;
  std::size_t fallbacks = 0;
  std::size_t enlargements = 0;
  std::size_t iterations = 0;
  std::size_t oracle_calls = 0;
  std::uint64_t basis_hash = 0;
  double final_stage_ratio = 0;
  std::vector<double> last_k_shares;
};

struct BenchRecord {
  std::size_t id = 0;
  std::uint32_t p = 0;
  std::size_t n = 0;
  unsigned degree = 0;
  std::uint64_t seed = 0;
  std::size_t order_ideal_size = 0;
  std::vector<VariantResult> variants;
  std::vector<std::pair<double, std::size_t>> border_gap;
};

/// Final-stage share of elimination ops (init ops count as final stage when
/// the universe never grew). 1.0 for an empty trace.
double final_stage_ratio(const RunTrace& trace);
/// Cumulative share of the last 1..k final-stage iterations within the final-stage iteration ops.
std::vector<double> last_k_shares(const RunTrace& trace, std::size_t k);
/// (|V_i| / |L|, T - i) for the final-stage iterations of a BBA run, T = iterations - 1.
std::vector<std::pair<double, std::size_t>> border_gap_trace(const RunTrace& trace);

/// Average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

VariantResult run_variant(const Ring& ring, const std::vector<Polynomial>& F, const VariantSpec& spec,
                          const SuiteConfig& config, std::uint64_t seed);

/// Throws VariantDisagreement when two variants return different bases.
std::vector<BenchRecord> run_benchmark(const SuiteConfig& config);

struct VariantSummary {
  std::size_t runs = 0;
  double wall_mean = 0, wall_std = 0, wall_median = 0;
  double ops_mean = 0;
  double zero_mean = 0, zero_final_mean = 0;
  double fallbacks_mean = 0;
  double final_stage_ratio_mean = 0;
  std::vector<double> last_k_share_mean;
};

struct BenchSummary {
  std::map<std::string, VariantSummary> variants;
  /// Keyed by variant: ratio of means and ratio of medians of wall time versus ibba.
  std::map<std::string, std::pair<double, double>> speedup_vs_ibba;
  std::optional<double> gap_spearman;
};

BenchSummary summarize(const std::vector<BenchRecord>& records);

std::string report_json(const SuiteConfig& config, const std::vector<BenchRecord>& records,
                        const BenchSummary& summary);
std::string report_csv(const std::vector<BenchRecord>& records);

/// Worker count: requested (0 = hardware), capped by BORDERFORGE_THREADS.
std::size_t worker_count(std::size_t requested);

}  // namespace borderforge
