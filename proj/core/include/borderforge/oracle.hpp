#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "borderforge/term.hpp"

namespace borderforge {

class Ring;
class GeneratorSet;

/// Candidate x_variable * v where lt(v) = target_lt. variable is 1-based.
struct ExpansionPair {
  std::size_t variable = 1;
  Term target_lt;

  friend bool operator==(const ExpansionPair&, const ExpansionPair&) noexcept = default;
};

/// Empty means "no expansion needed".
using OraclePrediction = std::vector<ExpansionPair>;

struct OracleConfig {
  std::size_t budget = 5;        // k
  double gap_threshold = 0.9;    // tau
  std::size_t truncation = 5;    // l

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

enum class Variant { Bba, Ibba };

Variant parse_variant(const std::string& name);
std::string to_string(Variant v);

struct OracleQuery {
  const Ring& ring;
  const GeneratorSet& state;
  Variant base;
  std::size_t truncation;
};

class Oracle {
 public:
  virtual ~Oracle() = default;
  /// May throw OracleUnavailable; the caller then runs a standard step.
  virtual OraclePrediction predict(const OracleQuery& query) = 0;
  virtual std::string name() const = 0;
};

}  // namespace borderforge
