#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "borderforge/bba.hpp"
#include "borderforge/obba.hpp"
#include "borderforge/wire.hpp"

namespace borderforge {

/// One supervised example: what the oracle saw and the pairs it should answer.
struct TrainingSample {
  OracleView view;
  OraclePrediction labels;

  bool is_terminal() const noexcept { return labels.empty(); }

  friend bool operator==(const TrainingSample&, const TrainingSample&) = default;
};

struct LabelingConfig {
  Variant base = Variant::Ibba;
  Elimination elimination = Elimination::Fge;
  std::size_t truncation = 5;
  std::optional<unsigned> degree_cap;
};

/// A perfect-oracle run consulted at every iteration, with its exchanges.
struct LabeledRun {
  SolveResult result;
  std::vector<OracleExchange> exchanges;
};

LabeledRun label_run(const Ring& ring, const std::vector<Polynomial>& F, const LabelingConfig& config = {});

/// The last `last_k` expanding exchanges of the final universe plus its
/// terminal exchange. With `final_stage_only` false every stage is scanned.
std::vector<TrainingSample> extract_samples(const std::vector<OracleExchange>& exchanges, std::size_t last_k,
                                            bool final_stage_only = true);

/// Builds a replay table from samples keyed by view_key.
ReplayOracle make_replay_oracle(const std::vector<TrainingSample>& samples);

/// Transmitted content of a sample.
struct SampleContent {
  std::vector<Term> universe_corners;
  std::vector<Polynomial> generators;

  friend bool operator==(const SampleContent&, const SampleContent&) = default;
};

using TokenStream = std::vector<std::string>;

/// `C<c> E<a1> .. E<an>` per monomial, `+` inside a polynomial, `<sep>` between
/// set elements, `<supsep>` between the corner set and the generators, `<eos>` last.
TokenStream tokenize_infix(const TrainingSample& sample);
TokenStream tokenize_infix(const SampleContent& content);
/// Throws ParseError on malformed streams.
SampleContent detokenize_infix(const Ring& ring, const TokenStream& tokens);

/// Target sequence: `X<j> E<a1> .. E<an>` per pair, `<sep>` between pairs, `<eos>` last.
TokenStream tokenize_labels(const OraclePrediction& labels);
OraclePrediction detokenize_labels(std::size_t nvars, const TokenStream& tokens);

enum class FollowUp { Plus, Sep, SupSep, Eos };
const char* to_string(FollowUp f);

/// One monomial with the token that follows it.
struct MonomialToken {
  Fp coeff;
  Term term;
  FollowUp follow = FollowUp::Eos;

  friend bool operator==(const MonomialToken&, const MonomialToken&) = default;
};

/// One token per monomial. With no generators the last corner carries `<eos>`.
std::vector<MonomialToken> tokenize_monomial(const TrainingSample& sample);
std::vector<MonomialToken> tokenize_monomial(const SampleContent& content);
SampleContent detokenize_monomial(const Ring& ring, const std::vector<MonomialToken>& tokens);
/// `C<c>|E<a1>,..,E<an>|<follow>`
std::string format_token(const MonomialToken& t);

/// One JSON object per line with fields p, n, l, universe_corners, generators, pairs.
std::string encode_sample(const TrainingSample& s);
/// Throws SchemaError carrying `line`.
TrainingSample decode_sample(const std::string& text, std::size_t line = 1);

/// Throws IoError.
void write_dataset(const std::string& path, const std::vector<TrainingSample>& samples);
/// Throws IoError or SchemaError with the 1-based line number.
std::vector<TrainingSample> read_dataset(const std::string& path);

}  // namespace borderforge
