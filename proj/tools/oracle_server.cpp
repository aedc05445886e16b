// Line-delimited JSON oracle over stdio: one response per request, same id.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "borderforge/datagen.hpp"
#include "borderforge/errors.hpp"
#include "borderforge/wire.hpp"

namespace bf = borderforge;
using nlohmann::json;

namespace {

json recover_id(const std::string& line) {
  const json j = json::parse(line, nullptr, false);
  if (j.is_object() && j.contains("id") && j["id"].is_number_unsigned()) return j["id"];
  return nullptr;
}

std::string error_response(const json& id, const std::string& message) {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["pairs"] = json::array();
  j["error"] = message;
  return j.dump();
}

bf::OraclePrediction full_pairs(const bf::OracleView& view) {
  bf::OraclePrediction out;
  for (const auto& g : view.generators) {
    if (g.is_zero()) continue;
    for (std::size_t v = 1; v <= view.n; ++v) out.push_back({v, g.lt()});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reference oracle server (stdio)"};
  std::string backend = "full";
  std::string log_path;
  app.add_option("--backend", backend, "full or replay:FILE");
  app.add_option("--log", log_path, "Append every response line to this file");
  CLI11_PARSE(app, argc, argv);

  std::map<std::string, bf::OraclePrediction> table;
  const bool replay = backend.rfind("replay:", 0) == 0;
  try {
    if (replay) {
      for (const auto& s : bf::read_dataset(backend.substr(7))) table.emplace(bf::view_key(s.view), s.labels);
    } else if (backend != "full") {
      throw bf::ConfigError("unknown backend '" + backend + "'");
    }
  } catch (const bf::Error& e) {
    std::cerr << json{{"error", "DomainError"}, {"kind", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }

  std::ofstream log;
  if (!log_path.empty()) log.open(log_path, std::ios::app);

  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    std::string reply;
    std::uint64_t id = 0;
    try {
      const auto view = bf::decode_request(line, &id);
      if (!replay) {
        reply = bf::encode_response(id, full_pairs(view));
      } else if (auto it = table.find(bf::view_key(view)); it != table.end()) {
        reply = bf::encode_response(id, it->second);
      } else {
        reply = error_response(id, "no replay entry for this state");
      }
    } catch (const bf::OracleUnavailable& e) {
      reply = error_response(recover_id(line), e.what());
    }
    std::cout << reply << "\n" << std::flush;
    if (log) log << reply << "\n" << std::flush;
  }
  return 0;
}
