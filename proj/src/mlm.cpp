#include "lexsimp/mlm.hpp"

#include <algorithm>
#include <cmath>

#include "lexsimp/error.hpp"
#include "lexsimp/utf8.hpp"

namespace lexsimp {

void TokenSequence::validate() const {
  if (tokens.empty()) throw ContractError("empty token sequence");
  if (pair_boundary && (*pair_boundary == 0 || *pair_boundary >= tokens.size()))
    throw ContractError("pair boundary outside the sequence");
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::u32string run;
  auto flush = [&] {
    if (!run.empty()) {
      out.push_back(utf8::encode(run));
      run.clear();
    }
  };
  for (char32_t cp : utf8::decode(text)) {
    if (utf8::is_whitespace(cp)) {
      flush();
    } else if (utf8::is_cjk(cp)) {
      flush();
      out.push_back(utf8::encode(cp));
    } else {
      run.push_back(cp);
    }
  }
  flush();
  return out;
}

SplicedTokens splice_tokens(std::string_view sentence, std::size_t offset, std::size_t count,
                            const std::vector<std::string>& middle) {
  const std::size_t len = utf8::length(sentence);
  SplicedTokens out;
  out.tokens = tokenize(utf8::substr(sentence, 0, offset));
  out.begin = out.tokens.size();
  out.tokens.insert(out.tokens.end(), middle.begin(), middle.end());
  out.end = out.tokens.size();
  const std::size_t tail = std::min(len, offset + count);
  auto suffix = tokenize(utf8::substr(sentence, tail, len - tail));
  out.tokens.insert(out.tokens.end(), suffix.begin(), suffix.end());
  return out;
}

void MlmBackend::check_query(const TokenSequence& seq, std::size_t position) const {
  seq.validate();
  if (position >= seq.tokens.size())
    throw ContractError("query position " + std::to_string(position) + " past end of sequence");
  if (!seq.is_mask(position))
    throw ContractError("query position " + std::to_string(position) + " is not masked");
}

MaskDistribution MlmBackend::predict_masked(const TokenSequence& seq, std::size_t position,
                                            std::size_t top_n) const {
  check_query(seq, position);
  if (top_n == 0) throw ContractError("top_n must be at least 1");
  MaskDistribution dist = do_predict(seq, position, top_n);
  std::stable_sort(dist.entries.begin(), dist.entries.end(), [](const auto& a, const auto& b) {
    if (a.prob != b.prob) return a.prob > b.prob;
    return a.token < b.token;
  });
  if (dist.entries.size() > top_n) dist.entries.resize(top_n);
  return dist;
}

double MlmBackend::token_loss(const TokenSequence& seq, std::size_t position,
                              const std::string& true_token) const {
  check_query(seq, position);
  const auto p = do_probability(seq, position, true_token);
  if (!p || !(*p > 0.0)) return ceiling_loss_;
  return -std::log(*p);
}

MaskDistribution predict_masked(const MlmBackend& backend, const TokenSequence& seq,
                                std::size_t position, std::size_t top_n) {
  return backend.predict_masked(seq, position, top_n);
}

double token_loss(const MlmBackend& backend, const TokenSequence& seq, std::size_t position,
                  const std::string& true_token) {
  return backend.token_loss(seq, position, true_token);
}

}  // namespace lexsimp
