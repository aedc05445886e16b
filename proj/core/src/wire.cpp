#include "borderforge/wire.hpp"

#include "borderforge/bba.hpp"
#include "borderforge/errors.hpp"
#include "json_codec.hpp"

namespace borderforge {

using codec::json;

Polynomial truncate(const Polynomial& f, std::size_t l) {
  if (f.size() <= l) return f;
  return Polynomial::from_sorted(std::vector<Monomial>(f.terms().begin(), f.terms().begin() + l));
}

OracleView make_view(const GeneratorSet& V, std::size_t l) {
  const Ring& ring = V.ring();
  OracleView v;
  v.p = ring.field().modulus();
  v.n = ring.nvars();
  v.l = l;
  v.universe_corners = V.universe().corners(ring);
  for (const auto* g : V.polynomials()) v.generators.push_back(truncate(*g, l));
  return v;
}

std::string view_key(const OracleView& view) {
  const json f = codec::view_fields(view);
  return json::array({f["universe_corners"], f["generators"]}).dump();
}

std::string encode_request(std::uint64_t id, const OracleView& view) {
  const json f = codec::view_fields(view);
  nlohmann::ordered_json j;
  j["id"] = id;
  for (const char* k : {"p", "n", "l", "universe_corners", "generators"}) j[k] = f[k];
  return j.dump();
}

OracleView decode_request(const std::string& line, std::uint64_t* id) {
  try {
    const json j = codec::parse_line(line);
    if (id != nullptr) *id = codec::get_field<std::uint64_t>(j, "id");
    return codec::view_from_json(j);
  } catch (const codec::DecodeError& e) {
    throw OracleUnavailable(std::string("malformed request: ") + e.what());
  } catch (const json::exception& e) {
    throw OracleUnavailable(std::string("malformed request: ") + e.what());
  }
}

std::string encode_response(std::uint64_t id, const OraclePrediction& pairs) {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["pairs"] = codec::pairs_to_json(pairs);
  return j.dump();
}

OraclePrediction decode_response(const std::string& line, std::uint64_t expected_id, std::size_t nvars) {
  try {
    const json j = codec::parse_line(line);
    const auto id = codec::get_field<std::uint64_t>(j, "id");
    if (id != expected_id) {
      throw OracleUnavailable("response id " + std::to_string(id) + " does not match request " +
                              std::to_string(expected_id));
    }
    if (j.contains("error")) throw OracleUnavailable("oracle reported: " + j.at("error").dump());
    if (!j.contains("pairs")) throw codec::DecodeError("missing field 'pairs'");
    return codec::pairs_from_json(j.at("pairs"), nvars);
  } catch (const codec::DecodeError& e) {
    throw OracleUnavailable(std::string("malformed response: ") + e.what());
  } catch (const json::exception& e) {
    throw OracleUnavailable(std::string("malformed response: ") + e.what());
  }
}

}  // namespace borderforge
