#include "borderforge/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "borderforge/errors.hpp"
#include "json_codec.hpp"

namespace borderforge {

using codec::json;

LabeledRun label_run(const Ring& ring, const std::vector<Polynomial>& F, const LabelingConfig& config) {
  PerfectOracle perfect;
  RecordingOracle recorder(perfect);
  SolveConfig sc;
  sc.variant = config.base;
  sc.elimination = config.elimination;
  sc.degree_cap = config.degree_cap;
  sc.oracle = &recorder;
  sc.oracle_config.budget = std::numeric_limits<std::size_t>::max();
  sc.oracle_config.gap_threshold = 1e-12;
  sc.oracle_config.truncation = config.truncation;
  LabeledRun run;
  run.result = compute_border_basis(ring, F, sc);
  run.exchanges = recorder.exchanges();
  return run;
}

std::vector<TrainingSample> extract_samples(const std::vector<OracleExchange>& exchanges, std::size_t last_k,
                                            bool final_stage_only) {
  std::vector<TrainingSample> out;
  if (!final_stage_only) {
    for (const auto& e : exchanges) out.push_back({e.view, e.pairs});
    return out;
  }
  unsigned final_degree = 0;
  for (const auto& e : exchanges) final_degree = std::max(final_degree, e.universe_degree);
  std::vector<const OracleExchange*> expanding;
  const OracleExchange* terminal = nullptr;
  for (const auto& e : exchanges) {
    if (e.universe_degree != final_degree) continue;
    if (e.pairs.empty()) {
      terminal = &e;
    } else {
      expanding.push_back(&e);
    }
  }
  const std::size_t skip = expanding.size() > last_k ? expanding.size() - last_k : 0;
  for (std::size_t i = skip; i < expanding.size(); ++i) out.push_back({expanding[i]->view, expanding[i]->pairs});
  if (terminal != nullptr) out.push_back({terminal->view, {}});
  return out;
}

ReplayOracle make_replay_oracle(const std::vector<TrainingSample>& samples) {
  ReplayOracle oracle;
  for (const auto& s : samples) oracle.add(view_key(s.view), s.labels);
  return oracle;
}

namespace {

SampleContent content_of(const TrainingSample& s) { return {s.view.universe_corners, s.view.generators}; }

std::string tok(char prefix, unsigned v) { return prefix + std::to_string(v); }

void push_monomial(TokenStream& out, Fp c, const Term& t) {
  out.push_back(tok('C', c.v));
  for (std::size_t i = 0; i < t.nvars(); ++i) out.push_back(tok('E', t.exponent(i)));
}

unsigned parse_value(const std::string& token, char prefix) {
  unsigned v = 0;
  if (token.size() < 2 || token[0] != prefix) throw ParseError("expected a " + std::string(1, prefix) + " token, got '" + token + "'");
  const auto* first = token.data() + 1;
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ParseError("bad numeric token '" + token + "'");
  return v;
}

Term read_term(const Ring& ring, const TokenStream& tokens, std::size_t& pos) {
  std::vector<unsigned> e(ring.nvars());
  for (auto& a : e) {
    if (pos >= tokens.size()) throw ParseError("token stream ends inside a monomial");
    a = parse_value(tokens[pos++], 'E');
  }
  return Term(std::span<const unsigned>(e));
}

Fp checked_coeff(const Ring& ring, unsigned c) {
  if (c == 0 || c >= ring.field().modulus()) throw ParseError("coefficient " + std::to_string(c) + " is not a nonzero residue");
  return Fp{c};
}

}  // namespace

TokenStream tokenize_infix(const SampleContent& content) {
  TokenStream out;
  for (std::size_t i = 0; i < content.universe_corners.size(); ++i) {
    if (i > 0) out.emplace_back("<sep>");
    push_monomial(out, Fp{1}, content.universe_corners[i]);
  }
  out.emplace_back("<supsep>");
  for (std::size_t i = 0; i < content.generators.size(); ++i) {
    if (i > 0) out.emplace_back("<sep>");
    bool first = true;
    for (const auto& m : content.generators[i]) {
      if (!first) out.emplace_back("+");
      push_monomial(out, m.coeff, m.term);
      first = false;
    }
  }
  out.emplace_back("<eos>");
  return out;
}

TokenStream tokenize_infix(const TrainingSample& sample) { return tokenize_infix(content_of(sample)); }

SampleContent detokenize_infix(const Ring& ring, const TokenStream& tokens) {
  SampleContent c;
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) throw ParseError("token stream ends without <eos>");
    return tokens[pos++];
  };
  if (tokens.empty() || tokens.front() != "<supsep>") {
    while (true) {
      if (parse_value(next(), 'C') != 1) throw ParseError("universe corners carry coefficient 1");
      c.universe_corners.push_back(read_term(ring, tokens, pos));
      const std::string& s = next();
      if (s == "<supsep>") break;
      if (s != "<sep>") throw ParseError("unexpected token '" + s + "' in the corner set");
    }
  } else {
    ++pos;
  }
  if (pos < tokens.size() && tokens[pos] == "<eos>") {
    if (pos + 1 != tokens.size()) throw ParseError("tokens after <eos>");
    return c;
  }
  std::vector<std::pair<Term, Fp>> terms;
  while (true) {
    const Fp coeff = checked_coeff(ring, parse_value(next(), 'C'));
    terms.emplace_back(read_term(ring, tokens, pos), coeff);
    const std::string& s = next();
    if (s == "+") continue;
    if (s != "<sep>" && s != "<eos>") throw ParseError("unexpected token '" + s + "' in the generator set");
    const std::size_t count = terms.size();
    Polynomial f = Polynomial::from_terms(ring, std::move(terms));
    if (f.size() != count) throw ParseError("generator has repeated terms");
    c.generators.push_back(std::move(f));
    terms.clear();
    if (s == "<eos>") break;
  }
  if (pos != tokens.size()) throw ParseError("tokens after <eos>");
  return c;
}

TokenStream tokenize_labels(const OraclePrediction& labels) {
  TokenStream out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) out.emplace_back("<sep>");
    out.push_back(tok('X', static_cast<unsigned>(labels[i].variable)));
    const Term& t = labels[i].target_lt;
    for (std::size_t j = 0; j < t.nvars(); ++j) out.push_back(tok('E', t.exponent(j)));
  }
  out.emplace_back("<eos>");
  return out;
}

OraclePrediction detokenize_labels(std::size_t nvars, const TokenStream& tokens) {
  OraclePrediction out;
  if (tokens.size() == 1 && tokens[0] == "<eos>") return out;
  std::size_t pos = 0;
  while (true) {
    if (pos + nvars + 2 > tokens.size()) throw ParseError("label stream ends inside a pair");
    ExpansionPair pair;
    pair.variable = parse_value(tokens[pos++], 'X');
    std::vector<unsigned> e(nvars);
    for (auto& a : e) a = parse_value(tokens[pos++], 'E');
    pair.target_lt = Term(std::span<const unsigned>(e));
    out.push_back(pair);
    const std::string& s = tokens[pos++];
    if (s == "<eos>") break;
    if (s != "<sep>") throw ParseError("unexpected token '" + s + "' in the label stream");
  }
  if (pos != tokens.size()) throw ParseError("tokens after <eos>");
  return out;
}

const char* to_string(FollowUp f) {
  switch (f) {
    case FollowUp::Plus:
      return "+";
    case FollowUp::Sep:
      return "<sep>";
    case FollowUp::SupSep:
      return "<supsep>";
    case FollowUp::Eos:
      return "<eos>";
  }
  return "?";
}

std::vector<MonomialToken> tokenize_monomial(const SampleContent& content) {
  std::vector<MonomialToken> out;
  const auto& L = content.universe_corners;
  for (std::size_t i = 0; i < L.size(); ++i) out.push_back({Fp{1}, L[i], FollowUp::Sep});
  if (!out.empty()) out.back().follow = content.generators.empty() ? FollowUp::Eos : FollowUp::SupSep;
  for (const auto& g : content.generators) {
    for (const auto& m : g) out.push_back({m.coeff, m.term, FollowUp::Plus});
    out.back().follow = FollowUp::Sep;
  }
  if (!out.empty()) out.back().follow = FollowUp::Eos;
  return out;
}

std::vector<MonomialToken> tokenize_monomial(const TrainingSample& sample) {
  return tokenize_monomial(content_of(sample));
}

SampleContent detokenize_monomial(const Ring& ring, const std::vector<MonomialToken>& tokens) {
  SampleContent c;
  std::size_t pos = 0;
  bool in_corners = true;
  std::vector<std::pair<Term, Fp>> terms;
  for (; pos < tokens.size(); ++pos) {
    const auto& t = tokens[pos];
    ring.check(t.term);
    if (in_corners) {
      if (t.coeff.v != 1) throw ParseError("universe corners carry coefficient 1");
      if (t.follow == FollowUp::Plus) throw ParseError("'+' inside the corner set");
      c.universe_corners.push_back(t.term);
      if (t.follow == FollowUp::SupSep) in_corners = false;
      if (t.follow == FollowUp::Eos) break;
      continue;
    }
    terms.emplace_back(t.term, checked_coeff(ring, t.coeff.v));
    if (t.follow == FollowUp::SupSep) throw ParseError("second <supsep>");
    if (t.follow == FollowUp::Plus) continue;
    const std::size_t count = terms.size();
    Polynomial f = Polynomial::from_terms(ring, std::move(terms));
    if (f.size() != count) throw ParseError("generator has repeated terms");
    c.generators.push_back(std::move(f));
    terms.clear();
    if (t.follow == FollowUp::Eos) break;
  }
  if (pos + 1 != tokens.size()) throw ParseError("token stream must end with exactly one <eos>");
  return c;
}

std::string format_token(const MonomialToken& t) {
  std::string s = tok('C', t.coeff.v) + "|";
  for (std::size_t i = 0; i < t.term.nvars(); ++i) {
    if (i > 0) s += ",";
    s += tok('E', t.term.exponent(i));
  }
  return s + "|" + to_string(t.follow);
}

std::string encode_sample(const TrainingSample& s) {
  const json f = codec::view_fields(s.view);
  nlohmann::ordered_json j;
  for (const char* k : {"p", "n", "l", "universe_corners", "generators"}) j[k] = f[k];
  j["pairs"] = codec::pairs_to_json(s.labels);
  return j.dump();
}

TrainingSample decode_sample(const std::string& text, std::size_t line) {
  try {
    const json j = codec::parse_line(text);
    TrainingSample s;
    s.view = codec::view_from_json(j);
    if (!j.contains("pairs")) throw codec::DecodeError("missing field 'pairs'");
    s.labels = codec::pairs_from_json(j.at("pairs"), s.view.n);
    for (const auto& p : s.labels) {
      if (p.variable < 1 || p.variable > s.view.n) throw codec::DecodeError("label variable out of range");
    }
    return s;
  } catch (const codec::DecodeError& e) {
    throw SchemaError(line, e.what());
  } catch (const json::exception& e) {
    throw SchemaError(line, e.what());
  }
}

void write_dataset(const std::string& path, const std::vector<TrainingSample>& samples) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (const auto& s : samples) out << encode_sample(s) << '\n';
  if (!out) throw IoError("write to " + path + " failed");
}

std::vector<TrainingSample> read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<TrainingSample> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) continue;
    out.push_back(decode_sample(text, line));
  }
  if (in.bad()) throw IoError("read from " + path + " failed");
  return out;
}

}  // namespace borderforge
