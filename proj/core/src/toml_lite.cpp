#include "toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "borderforge/errors.hpp"

namespace borderforge::toml {

namespace {

class Cursor {
 public:
  Cursor(const std::string& s, std::size_t line) : s_(s), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("suite line " + std::to_string(line_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }

  Value value() {
    skip_ws();
    if (pos_ >= s_.size()) fail("missing value");
    const char c = s_[pos_];
    if (c == '"') return {string()};
    if (c == '[') return {array()};
    if (s_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      return {true};
    }
    if (s_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      return {false};
    }
    return number();
  }

 private:
  std::string string() {
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) {
        const char e = s_[++pos_];
        out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
      } else {
        out += s_[pos_];
      }
      ++pos_;
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  Value::Array array() {
    ++pos_;
    Value::Array out;
    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) fail("unterminated array");
      if (s_[pos_] == ']') {
        ++pos_;
        return out;
      }
      out.push_back(value());
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ',') ++pos_;
    }
  }

  Value number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-' ||
                                s_[pos_] == '+' || s_[pos_] == '.' || s_[pos_] == '_')) {
      ++pos_;
    }
    std::string text = s_.substr(start, pos_ - start);
    std::erase(text, '_');
    if (text.empty()) fail("unexpected character '" + std::string(1, s_[start]) + "'");
    const bool is_float = text.find_first_of(".eE") != std::string::npos;
    const char* b = text.data();
    const char* e = b + text.size();
    if (is_float) {
      double d = 0;
      auto [p, ec] = std::from_chars(b, e, d);
      if (ec != std::errc() || p != e) fail("bad number '" + text + "'");
      return {d};
    }
    std::int64_t i = 0;
    auto [p, ec] = std::from_chars(*b == '+' ? b + 1 : b, e, i);
    if (ec != std::errc() || p != e) fail("bad number '" + text + "'");
    return {i};
  }

  const std::string& s_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

int bracket_balance(const std::string& s) {
  int depth = 0;
  bool quoted = false;
  for (char c : s) {
    if (c == '"') quoted = !quoted;
    if (quoted) continue;
    if (c == '#') break;
    if (c == '[') ++depth;
    if (c == ']') --depth;
  }
  return depth;
}

}  // namespace

Document parse(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string raw;
  std::string table;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t first_line = line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (s[0] == '[') {
      const auto close = s.find(']');
      if (close == std::string::npos) Cursor(s, line).fail("unterminated table header");
      table = trim(s.substr(1, close - 1));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) Cursor(s, line).fail("expected key = value");
    const std::string key = trim(s.substr(0, eq));
    std::string rhs = s.substr(eq + 1);
    while (bracket_balance(rhs) > 0 && std::getline(in, raw)) {
      ++line;
      rhs += "\n" + raw;
    }
    Cursor c(rhs, first_line);
    Value v = c.value();
    if (!c.done()) c.fail("trailing characters after value");
    const std::string full = table.empty() ? key : table + "." + key;
    if (doc.contains(full)) c.fail("duplicate key '" + full + "'");
    doc.emplace(full, std::move(v));
  }
  return doc;
}

}  // namespace borderforge::toml
