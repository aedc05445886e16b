#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace borderforge::toml {

/// Subset of TOML: tables, bare keys, strings, integers, floats, booleans and
/// flat arrays. Keys inside `[table]` are stored as `table.key`.
struct Value {
  using Array = std::vector<Value>;
  std::variant<std::string, std::int64_t, double, bool, Array> v;
};

using Document = std::map<std::string, Value>;

/// Throws ConfigError with a line number.
Document parse(const std::string& text);

}  // namespace borderforge::toml
