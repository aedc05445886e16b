#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "borderforge/bba.hpp"
#include "borderforge/bench.hpp"
#include "borderforge/datagen.hpp"
#include "borderforge/errors.hpp"
#include "borderforge/obba.hpp"
#include "borderforge/sampling.hpp"

namespace bf = borderforge;
using nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalConfig {
  std::uint32_t field_p = 31;
  std::optional<std::size_t> nvars;
  std::uint64_t seed = 0;
  std::string term_order = "degrevlex";
  std::optional<unsigned> degree_cap;
  int verbosity = 0;
};

void report_error(const std::string& category, const std::string& kind, const std::string& message) {
  ordered_json j;
  j["error"] = category;
  j["kind"] = kind;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
}

bf::Ring make_ring(const GlobalConfig& g) {
  if (!g.nvars) throw UsageError("--nvars is required");
  return bf::Ring(bf::PrimeField(g.field_p), *g.nvars, bf::parse_term_order(g.term_order));
}

ordered_json term_json(const bf::Term& t) {
  ordered_json a = ordered_json::array();
  for (std::size_t i = 0; i < t.nvars(); ++i) a.push_back(t.exponent(i));
  return a;
}

ordered_json poly_json(const bf::Polynomial& f) {
  ordered_json a = ordered_json::array();
  for (const auto& m : f) a.push_back(ordered_json::array({m.coeff.v, term_json(m.term)}));
  return a;
}

ordered_json trace_json(const bf::RunTrace& t) {
  ordered_json j;
  j["init_ops"] = t.init_ops;
  j["final_reduction_ops"] = t.final_reduction_ops;
  j["total_ops"] = t.total_ops();
  j["final_stage_ops"] = t.final_stage_ops();
  j["zero_reductions"] = t.total_zero_reductions();
  j["final_stage_zero_reductions"] = t.final_stage_zero_reductions();
  j["enlargements"] = t.enlargements;
  j["fallbacks"] = t.fallbacks;
  j["oracle_calls"] = t.oracle_calls;
  j["oracle_unavailable"] = t.oracle_unavailable;
  ordered_json its = ordered_json::array();
  for (const auto& it : t.iterations) {
    ordered_json r;
    r["kind"] = bf::to_string(it.kind);
    r["universe_degree"] = it.universe_degree;
    r["universe_size"] = it.universe_size;
    r["basis_before"] = it.basis_before;
    r["candidates"] = it.candidates;
    r["new_elements"] = it.new_elements;
    r["zero_reductions"] = it.zero_reductions;
    r["out_of_universe"] = it.out_of_universe;
    r["stale_predictions"] = it.stale_predictions;
    r["ops"] = it.ops;
    its.push_back(std::move(r));
  }
  j["iterations"] = std::move(its);
  return j;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw bf::IoError("cannot write " + path);
  return out;
}

std::vector<bf::Polynomial> read_system(const bf::Ring& ring, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bf::IoError("cannot read " + path);
  std::vector<bf::Polynomial> F;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    try {
      F.push_back(bf::parse_polynomial(ring, line));
    } catch (const bf::ParseError& e) {
      throw bf::ParseError(path + ":" + std::to_string(no) + ": " + e.what());
    }
  }
  return F;
}

struct SolveOptions {
  std::string input;
  std::string variant = "ibba";
  std::string elim = "fge";
  std::string oracle = "none";
  std::size_t budget = 5;
  double gap_threshold = 0.9;
  std::size_t truncation = 5;
  unsigned timeout_ms = 10000;
  std::string trace_out;
  std::string out;
};

int run_solve(const GlobalConfig& g, const SolveOptions& o) {
  const bf::Ring ring = make_ring(g);
  const auto F = read_system(ring, o.input);
  bf::SolveConfig config;
  config.variant = bf::parse_variant(o.variant);
  config.elimination = bf::parse_elimination(o.elim);
  config.degree_cap = g.degree_cap;
  config.oracle_config = {o.budget, o.gap_threshold, o.truncation};
  config.oracle_config.validate();
  std::unique_ptr<bf::Oracle> oracle;
  if (o.oracle.rfind("external:", 0) == 0) {
    oracle = std::make_unique<bf::ExternalOracle>(o.oracle.substr(9), std::chrono::milliseconds(o.timeout_ms));
  } else {
    oracle = bf::make_oracle(o.oracle, g.seed);
  }
  config.oracle = oracle.get();
  const auto result = bf::compute_border_basis(ring, F, config);

  std::ostringstream text;
  text << "# order ideal:";
  for (const auto& t : result.basis.order_ideal.terms()) text << ' ' << bf::format_term(t);
  text << "\n";
  for (const auto& gen : result.basis.generators) text << bf::format_polynomial(gen.poly) << "\n";
  if (o.out.empty()) {
    std::cout << text.str();
  } else {
    open_out(o.out) << text.str();
  }

  if (!o.trace_out.empty()) {
    ordered_json j;
    j["p"] = ring.field().modulus();
    j["n"] = ring.nvars();
    j["variant"] = o.variant;
    j["elimination"] = o.elim;
    j["oracle"] = o.oracle;
    ordered_json oi = ordered_json::array();
    for (const auto& t : result.basis.order_ideal.terms()) oi.push_back(term_json(t));
    j["order_ideal"] = std::move(oi);
    ordered_json gens = ordered_json::array();
    for (const auto& gen : result.basis.generators) {
      gens.push_back({{"border_term", term_json(gen.border_term)}, {"polynomial", poly_json(gen.poly)},
                      {"text", bf::format_polynomial(gen.poly)}});
    }
    j["generators"] = std::move(gens);
    j["trace"] = trace_json(result.trace);
    open_out(o.trace_out) << j.dump(2) << "\n";
  }
  if (g.verbosity > 0) {
    std::cerr << "iterations " << result.trace.iterations.size() << ", ops " << result.trace.total_ops()
              << ", zero reductions " << result.trace.total_zero_reductions() << "\n";
  }
  return 0;
}

struct SampleOptions {
  std::vector<unsigned> degree_caps;
  unsigned degree = 2;
  std::size_t count = 1;
  std::size_t rows = 0;
  unsigned transform_degree = 1;
  std::size_t transform_terms = 10;
  std::string out;
};

bf::InstanceParams instance_params(const SampleOptions& o) {
  bf::InstanceParams params;
  params.max_degree = o.degree;
  params.rows = o.rows;
  params.transform_degree = o.transform_degree;
  params.transform_terms = o.transform_terms;
  params.degree_caps = o.degree_caps;
  return params;
}

int run_sample(const GlobalConfig& g, const SampleOptions& o) {
  const bf::Ring ring = make_ring(g);
  if (ring.nvars() < 2 && o.degree_caps.size() != 1) throw bf::InvalidArity("sample needs --nvars >= 2");
  const auto params = instance_params(o);
  std::ofstream file;
  if (!o.out.empty()) file = open_out(o.out);
  std::ostream& out = o.out.empty() ? std::cout : file;
  for (std::size_t i = 0; i < o.count; ++i) {
    const auto inst = bf::generate_instance(ring, params, g.seed + i);
    ordered_json j;
    j["seed"] = inst.seed;
    ordered_json corners = ordered_json::array();
    for (const auto& t : bf::corner_terms(ring, inst.order_ideal)) corners.push_back(term_json(t));
    j["order_ideal_corners"] = std::move(corners);
    ordered_json points = ordered_json::array();
    for (const auto& p : inst.points) {
      ordered_json row = ordered_json::array();
      for (auto c : p) row.push_back(c.v);
      points.push_back(std::move(row));
    }
    j["points"] = std::move(points);
    ordered_json basis = ordered_json::array();
    for (const auto& gen : inst.basis.generators) basis.push_back(poly_json(gen.poly));
    j["border_basis"] = std::move(basis);
    ordered_json F = ordered_json::array();
    for (const auto& f : inst.F) F.push_back(poly_json(f));
    j["F"] = std::move(F);
    out << j.dump() << "\n";
  }
  return 0;
}

struct DatagenOptions {
  SampleOptions instance;
  std::size_t last_k = 5;
  std::size_t truncation = 5;
  std::string scheme = "json";
};

std::string join(const std::vector<std::string>& tokens) {
  std::string s;
  for (const auto& t : tokens) {
    if (!s.empty()) s += ' ';
    s += t;
  }
  return s;
}

int run_datagen(const GlobalConfig& g, const DatagenOptions& o) {
  const bf::Ring ring = make_ring(g);
  const auto params = instance_params(o.instance);
  bf::LabelingConfig lc;
  lc.truncation = o.truncation;
  lc.degree_cap = g.degree_cap;
  std::vector<bf::TrainingSample> samples;
  for (std::size_t i = 0; i < o.instance.count; ++i) {
    const auto inst = bf::generate_instance(ring, params, g.seed + i);
    const auto run = bf::label_run(ring, inst.F, lc);
    auto s = bf::extract_samples(run.exchanges, o.last_k);
    samples.insert(samples.end(), s.begin(), s.end());
  }
  if (o.scheme == "json") {
    if (o.instance.out.empty()) {
      for (const auto& s : samples) std::cout << bf::encode_sample(s) << "\n";
    } else {
      bf::write_dataset(o.instance.out, samples);
    }
    return 0;
  }
  std::ofstream file;
  if (!o.instance.out.empty()) file = open_out(o.instance.out);
  std::ostream& out = o.instance.out.empty() ? std::cout : file;
  for (const auto& s : samples) {
    std::string input;
    if (o.scheme == "infix") {
      input = join(bf::tokenize_infix(s));
    } else {
      std::vector<std::string> tokens;
      for (const auto& t : bf::tokenize_monomial(s)) tokens.push_back(bf::format_token(t));
      input = join(tokens);
    }
    out << input << "\t" << join(bf::tokenize_labels(s.labels)) << "\n";
  }
  return 0;
}

struct BenchOptions {
  std::string suite;
  std::string out;
  std::string csv;
  std::optional<std::size_t> threads;
};

int run_bench(const GlobalConfig& g, const BenchOptions& o, bool seed_given) {
  auto config = bf::load_suite(o.suite);
  if (seed_given) config.seed = g.seed;
  if (g.degree_cap) config.degree_cap = g.degree_cap;
  if (o.threads) config.threads = *o.threads;
  const auto records = bf::run_benchmark(config);
  const auto summary = bf::summarize(records);
  const std::string report = bf::report_json(config, records, summary);
  if (o.out.empty()) {
    std::cout << report << "\n";
  } else {
    open_out(o.out) << report << "\n";
  }
  if (!o.csv.empty()) open_out(o.csv) << bf::report_csv(records);
  if (g.verbosity > 0 || !o.out.empty()) {
    for (const auto& [name, s] : summary.variants) {
      std::cerr << name << ": wall " << s.wall_mean << " +- " << s.wall_std << " s, ops " << s.ops_mean
                << ", zero " << s.zero_mean << " (final " << s.zero_final_mean << ")\n";
    }
    for (const auto& [name, r] : summary.speedup_vs_ibba) {
      std::cerr << name << " speedup vs ibba: " << r.first << " (means), " << r.second << " (medians)\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Border basis computation with oracle-guided expansion"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalConfig g;
  app.add_option("--field-p", g.field_p, "Prime modulus p");
  app.add_option("--nvars", g.nvars, "Number of variables");
  auto* seed_opt = app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--term-order", g.term_order, "degrevlex or deglex");
  app.add_option("--degree-cap", g.degree_cap, "Largest universe degree before giving up");
  app.add_flag("-v,--verbose", g.verbosity, "Progress on stderr");

  SolveOptions solve;
  auto* cmd_solve = app.add_subcommand("solve", "Border basis of a polynomial system");
  cmd_solve->add_option("--input", solve.input, "One polynomial per line")->required();
  cmd_solve->add_option("--variant", solve.variant, "bba or ibba");
  cmd_solve->add_option("--elim", solve.elim, "fge or naive");
  cmd_solve->add_option("--oracle", solve.oracle, "none|perfect|full|empty|random|adversarial|replay:FILE|external:ADDR");
  cmd_solve->add_option("--oracle-budget", solve.budget, "k");
  cmd_solve->add_option("--gap-threshold", solve.gap_threshold, "tau");
  cmd_solve->add_option("--truncate", solve.truncation, "Leading terms per generator sent to the oracle");
  cmd_solve->add_option("--oracle-timeout-ms", solve.timeout_ms, "External oracle timeout");
  cmd_solve->add_option("--trace-out", solve.trace_out, "JSON trace file");
  cmd_solve->add_option("--out", solve.out, "Basis output file (default stdout)");

  SampleOptions sample;
  auto add_instance_options = [](CLI::App* cmd, SampleOptions& o) {
    cmd->add_option("--degree-caps", o.degree_caps, "Per-variable order ideal caps");
    cmd->add_option("--degree", o.degree, "Generator degree D when no caps are given");
    cmd->add_option("--count", o.count, "Number of instances");
    cmd->add_option("--transform-rows", o.rows, "Rows r of A (0: n + 1)");
    cmd->add_option("--transform-degree", o.transform_degree, "Degree bound of A");
    cmd->add_option("--transform-terms", o.transform_terms, "Term bound of A");
    cmd->add_option("--out", o.out, "Output file (default stdout)");
  };
  auto* cmd_sample = app.add_subcommand("sample", "Sample (O, P, G, F) instances as JSONL");
  add_instance_options(cmd_sample, sample);

  DatagenOptions datagen;
  auto* cmd_datagen = app.add_subcommand("datagen", "Label final-stage oracle samples");
  add_instance_options(cmd_datagen, datagen.instance);
  cmd_datagen->add_option("--last-k", datagen.last_k, "Expansions kept from the final stage");
  cmd_datagen->add_option("--truncate", datagen.truncation, "Leading terms per generator");
  cmd_datagen->add_option("--scheme", datagen.scheme, "infix, monomial or json")
      ->check(CLI::IsMember({"infix", "monomial", "json"}));

  BenchOptions bench;
  auto* cmd_bench = app.add_subcommand("bench", "Run a benchmark suite");
  cmd_bench->add_option("--suite", bench.suite, "Suite TOML file")->required();
  cmd_bench->add_option("--out", bench.out, "JSON report (default stdout)");
  cmd_bench->add_option("--csv", bench.csv, "Per-run CSV");
  cmd_bench->add_option("--threads", bench.threads, "Worker count (1 for clean timing)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("UsageError", e.get_name(), e.what());
    return 2;
  }

  try {
    if (*cmd_solve) return run_solve(g, solve);
    if (*cmd_sample) return run_sample(g, sample);
    if (*cmd_datagen) return run_datagen(g, datagen);
    return run_bench(g, bench, seed_opt->count() > 0);
  } catch (const UsageError& e) {
    report_error("UsageError", "UsageError", e.what());
    return 2;
  } catch (const bf::Error& e) {
    report_error("DomainError", e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error("DomainError", "InternalError", e.what());
    return 1;
  }
}
