#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "borderforge/bba.hpp"
#include "borderforge/oracle.hpp"
#include "borderforge/wire.hpp"

namespace borderforge {

/// Labels of the candidates a standard step of `base` would need: simulated on
/// a copy of V, keeping every pair that fed a new basis element.
OraclePrediction perfect_oracle_labels(const GeneratorSet& V, Variant base = Variant::Ibba);

/// |V| / |L|
double relative_border_gap(const GeneratorSet& V);

/// Hindsight oracle.
class PerfectOracle final : public Oracle {
 public:
  OraclePrediction predict(const OracleQuery& q) override { return perfect_oracle_labels(q.state, q.base); }
  std::string name() const override { return "perfect"; }
};

/// Every n * |V| pair: degenerates to a BBA expansion.
class FullOracle final : public Oracle {
 public:
  OraclePrediction predict(const OracleQuery& q) override;
  std::string name() const override { return "full"; }
};

class EmptyOracle final : public Oracle {
 public:
  OraclePrediction predict(const OracleQuery&) override { return {}; }
  std::string name() const override { return "empty"; }
};

/// Each of the n * |V| pairs kept independently with the given probability.
class RandomSubsetOracle final : public Oracle {
 public:
  explicit RandomSubsetOracle(std::uint64_t seed, double keep = 0.5) : rng_(seed), keep_(keep) {}
  OraclePrediction predict(const OracleQuery& q) override;
  std::string name() const override { return "random"; }

 private:
  std::mt19937_64 rng_;
  double keep_;
};

/// Pairs the perfect oracle would not choose, plus pairs naming absent leading terms.
class AdversarialOracle final : public Oracle {
 public:
  OraclePrediction predict(const OracleQuery& q) override;
  std::string name() const override { return "adversarial"; }
};

/// Exact-match lookup keyed by view_key. A miss raises OracleUnavailable.
class ReplayOracle final : public Oracle {
 public:
  ReplayOracle() = default;
  void add(const std::string& key, OraclePrediction pairs) { table_.emplace(key, std::move(pairs)); }
  std::size_t size() const noexcept { return table_.size(); }
  OraclePrediction predict(const OracleQuery& q) override;
  std::string name() const override { return "replay"; }

 private:
  std::map<std::string, OraclePrediction> table_;
};

/// One recorded oracle consultation.
struct OracleExchange {
  unsigned universe_degree = 0;
  OracleView view;
  OraclePrediction pairs;
};

/// Forwards to another oracle and records every answered query.
class RecordingOracle final : public Oracle {
 public:
  explicit RecordingOracle(Oracle& inner) : inner_(&inner) {}
  OraclePrediction predict(const OracleQuery& q) override;
  std::string name() const override { return inner_->name(); }
  const std::vector<OracleExchange>& exchanges() const noexcept { return log_; }

 private:
  Oracle* inner_;
  std::vector<OracleExchange> log_;
};

/// Wire-protocol client. Address `unix:/path` connects to a local socket;
/// `exec:command` runs the command through /bin/sh and talks over its stdio.
class ExternalOracle final : public Oracle {
 public:
  explicit ExternalOracle(std::string address, std::chrono::milliseconds timeout = std::chrono::seconds(10));
  ~ExternalOracle() override;
  ExternalOracle(const ExternalOracle&) = delete;
  ExternalOracle& operator=(const ExternalOracle&) = delete;

  OraclePrediction predict(const OracleQuery& q) override;
  std::string name() const override { return "external"; }

  /// Raw exchange: sends one line, returns one line. Throws OracleUnavailable.
  std::string round_trip(const std::string& line);

 private:
  void connect();
  void disconnect() noexcept;

  std::string address_;
  std::chrono::milliseconds timeout_;
  int write_fd_ = -1;
  int read_fd_ = -1;
  int child_pid_ = -1;
  std::string buffer_;
  std::uint64_t next_id_ = 1;
};

/// Builds an oracle from `none|perfect|full|empty|random|adversarial|replay:FILE|external:ADDR`.
/// Returns nullptr for `none`. Throws ConfigError or IoError.
std::unique_ptr<Oracle> make_oracle(const std::string& spec, std::uint64_t seed = 0);

SolveResult run_obba(const Ring& ring, const std::vector<Polynomial>& F, Oracle& oracle,
                     const OracleConfig& config = {}, Variant base = Variant::Ibba,
                     Elimination elimination = Elimination::Fge);

}  // namespace borderforge
