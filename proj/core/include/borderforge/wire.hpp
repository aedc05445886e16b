#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "borderforge/oracle.hpp"
#include "borderforge/polynomial.hpp"

namespace borderforge {

class GeneratorSet;

/// What an oracle sees: universe corners and the generators truncated to l
/// leading terms, both descending.
struct OracleView {
  std::uint32_t p = 0;
  std::size_t n = 0;
  std::size_t l = 0;
  std::vector<Term> universe_corners;
  std::vector<Polynomial> generators;

  friend bool operator==(const OracleView&, const OracleView&) = default;
};

/// Keeps the l greatest monomials.
Polynomial truncate(const Polynomial& f, std::size_t l);

OracleView make_view(const GeneratorSet& V, std::size_t l);

/// Canonical replay key: compact JSON of [universe_corners, generators].
std::string view_key(const OracleView& view);

/// One request line without the trailing newline:
/// {"id":..,"p":..,"n":..,"l":..,"universe_corners":[[e..],..],"generators":[[[c,[e..]],..],..]}
std::string encode_request(std::uint64_t id, const OracleView& view);
/// Throws OracleUnavailable on malformed input.
OracleView decode_request(const std::string& line, std::uint64_t* id);

/// {"id":..,"pairs":[[var,[e..]],..]}
std::string encode_response(std::uint64_t id, const OraclePrediction& pairs);
/// Throws OracleUnavailable on malformed input, id mismatch, arity mismatch or
/// an "error" field.
OraclePrediction decode_response(const std::string& line, std::uint64_t expected_id, std::size_t nvars);

}  // namespace borderforge
