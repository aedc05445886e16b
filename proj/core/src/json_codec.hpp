#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "borderforge/oracle.hpp"
#include "borderforge/polynomial.hpp"
#include "borderforge/wire.hpp"

namespace borderforge::codec {

using nlohmann::json;

struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json term_to_json(const Term& t) {
  json a = json::array();
  for (std::size_t i = 0; i < t.nvars(); ++i) a.push_back(t.exponent(i));
  return a;
}

inline Term term_from_json(const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw DecodeError("exponent vector must have " + std::to_string(n) + " entries");
  std::vector<unsigned> e(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_number_unsigned() || j[i].get<std::uint64_t>() > kMaxExponent) {
      throw DecodeError("exponent must be an integer in [0, 255]");
    }
    e[i] = j[i].get<unsigned>();
  }
  return Term(std::span<const unsigned>(e));
}

inline json poly_to_json(const Polynomial& f) {
  json a = json::array();
  for (const auto& m : f) a.push_back(json::array({m.coeff.v, term_to_json(m.term)}));
  return a;
}

inline Polynomial poly_from_json(const Ring& ring, const json& j) {
  if (!j.is_array()) throw DecodeError("polynomial must be an array of [c, exponents]");
  std::vector<std::pair<Term, Fp>> terms;
  for (const auto& m : j) {
    if (!m.is_array() || m.size() != 2 || !m[0].is_number_unsigned()) throw DecodeError("monomial must be [c, exponents]");
    const auto c = m[0].get<std::uint64_t>();
    if (c == 0 || c >= ring.field().modulus()) throw DecodeError("coefficient must be a nonzero residue");
    terms.emplace_back(term_from_json(m[1], ring.nvars()), Fp{static_cast<std::uint32_t>(c)});
  }
  Polynomial f = Polynomial::from_terms(ring, std::move(terms));
  if (f.size() != j.size()) throw DecodeError("polynomial has repeated terms");
  return f;
}

inline json pairs_to_json(const OraclePrediction& pairs) {
  json a = json::array();
  for (const auto& p : pairs) a.push_back(json::array({p.variable, term_to_json(p.target_lt)}));
  return a;
}

inline OraclePrediction pairs_from_json(const json& j, std::size_t n) {
  if (!j.is_array()) throw DecodeError("pairs must be an array");
  OraclePrediction out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned()) throw DecodeError("pair must be [var, exponents]");
    const auto var = p[0].get<std::size_t>();
    if (var < 1 || var > n) throw DecodeError("variable index " + std::to_string(var) + " out of range");
    out.push_back({var, term_from_json(p[1], n)});
  }
  return out;
}

inline json view_fields(const OracleView& v) {
  json corners = json::array();
  for (const auto& t : v.universe_corners) corners.push_back(term_to_json(t));
  json gens = json::array();
  for (const auto& g : v.generators) gens.push_back(poly_to_json(g));
  return json{{"p", v.p}, {"n", v.n}, {"l", v.l}, {"universe_corners", corners}, {"generators", gens}};
}

template <class T>
T get_field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw DecodeError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw DecodeError(std::string("field '") + name + "' has the wrong type");
  }
}

inline OracleView view_from_json(const json& j) {
  OracleView v;
  v.p = get_field<std::uint32_t>(j, "p");
  v.n = get_field<std::size_t>(j, "n");
  v.l = get_field<std::size_t>(j, "l");
  if (v.n == 0 || v.n > kMaxVars) throw DecodeError("n out of range");
  Ring ring = [&] {
    try {
      return Ring(v.p, v.n);
    } catch (const std::exception& e) {
      throw DecodeError(e.what());
    }
  }();
  const json& corners = j.at("universe_corners");
  const json& gens = j.contains("generators") ? j.at("generators") : json();
  if (!corners.is_array() || !gens.is_array()) throw DecodeError("universe_corners and generators must be arrays");
  for (const auto& c : corners) v.universe_corners.push_back(term_from_json(c, v.n));
  for (const auto& g : gens) v.generators.push_back(poly_from_json(ring, g));
  return v;
}

inline json parse_line(const std::string& line) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw DecodeError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace borderforge::codec
