#include "lexsimp/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "lexsimp/error.hpp"

namespace lexsimp {

Direction direction(Feature f) noexcept {
  return f == Feature::LmFluency ? Direction::LowerBetter : Direction::HigherBetter;
}

std::string_view to_string(Feature f) {
  switch (f) {
    case Feature::LmFluency: return "language";
    case Feature::EmbSimilarity: return "similarity";
    case Feature::Frequency: return "frequency";
    case Feature::SememeSimilarity: return "hownet";
  }
  return "?";
}

Feature parse_feature(std::string_view name) {
  for (Feature f : kAllFeatures) {
    if (to_string(f) == name) return f;
  }
  throw ConfigError("unknown ranking feature '" + std::string(name) +
                    "' (expected language|similarity|frequency|hownet)");
}

std::vector<Feature> parse_feature_list(std::string_view text) {
  std::string s(text);
  for (char& c : s) {
    if (c == '[' || c == ']' || c == ',') c = ' ';
  }
  std::vector<Feature> out;
  std::size_t pos = 0;
  while (true) {
    const auto b = s.find_first_not_of(" \t", pos);
    if (b == std::string::npos) break;
    const auto e = s.find_first_of(" \t", b);
    const Feature f = parse_feature(s.substr(b, e == std::string::npos ? e : e - b));
    if (std::find(out.begin(), out.end(), f) != out.end())
      throw ConfigError("ranking feature '" + std::string(to_string(f)) + "' listed twice");
    out.push_back(f);
    if (e == std::string::npos) break;
    pos = e;
  }
  if (out.empty()) throw ConfigError("at least one ranking feature must be enabled");
  return out;
}

double lm_fluency(const MlmBackend& backend, const TargetSpan& span, const Word& candidate,
                  std::size_t window) {
  if (window == 0) throw ContractError("language-model window must be at least 1");
  const auto spliced =
      splice_tokens(span.sentence, span.offset, span.target.length(), tokenize(candidate.str()));
  const std::size_t lo = spliced.begin >= window ? spliced.begin - window : 0;
  const std::size_t hi = std::min(spliced.tokens.size(), spliced.end + window);

  TokenSequence seq{spliced.tokens, std::nullopt};
  double total = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const std::string truth = seq.tokens[i];
    seq.tokens[i] = std::string(kMaskToken);
    total += backend.token_loss(seq, i, truth);
    seq.tokens[i] = truth;
  }
  return hi > lo ? total / static_cast<double>(hi - lo) : 0.0;
}

std::optional<double> emb_similarity(const LexiconBundle& bundle, const Word& target,
                                     const Word& candidate) {
  if (candidate == target) return 1.0;
  return cosine(bundle.embeddings, target, candidate);
}

double sememe_similarity(const LexiconBundle& bundle, const Word& target, const Word& candidate) {
  const auto& a = bundle.sememes.senses(target);
  const auto& b = bundle.sememes.senses(candidate);
  if (a.empty() || b.empty()) return 0.0;
  if (candidate == target) return 1.0;
  double best = 0.0;
  for (const auto& s : a) {
    for (const auto& t : b) {
      // Both sides are sorted and duplicate-free.
      std::vector<std::string> common;
      std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(common));
      const std::size_t uni = s.size() + t.size() - common.size();
      best = std::max(best, static_cast<double>(common.size()) / static_cast<double>(uni));
    }
  }
  return best;
}

std::map<Word, Rational> rank_numbers(const FeatureScores& scores,
                                      const std::vector<Word>& candidates) {
  struct Entry {
    const Word* word;
    std::optional<double> value;
  };
  std::vector<Entry> entries;
  entries.reserve(candidates.size());
  for (const auto& w : candidates) {
    std::optional<double> v;
    if (auto it = scores.values.find(w); it != scores.values.end() && it->second &&
                                         !std::isnan(*it->second)) {
      v = it->second;
    }
    entries.push_back({&w, v});
  }
  const bool lower_better = scores.direction == Direction::LowerBetter;
  auto before = [&](const Entry& a, const Entry& b) {
    if (a.value.has_value() != b.value.has_value()) return a.value.has_value();
    if (!a.value) return false;
    return lower_better ? *a.value < *b.value : *a.value > *b.value;
  };
  std::stable_sort(entries.begin(), entries.end(), before);

  std::map<Word, Rational> ranks;
  std::size_t i = 0;
  while (i < entries.size()) {
    std::size_t j = i + 1;
    while (j < entries.size() && !before(entries[i], entries[j])) ++j;
    // Positions i+1 .. j share their mean.
    const Rational shared(static_cast<std::int64_t>(i + 1 + j), 2);
    for (std::size_t k = i; k < j; ++k) {
      if (!ranks.emplace(*entries[k].word, shared).second)
        throw ContractError("duplicate candidate '" + entries[k].word->str() + "'");
    }
    i = j;
  }
  return ranks;
}

RankedCandidates aggregate(const std::vector<FeatureScores>& features,
                           const std::vector<Word>& candidates, const FrequencyTable& freq) {
  if (features.empty()) throw ContractError("aggregate needs at least one feature");
  if (candidates.empty()) throw ContractError("aggregate needs at least one candidate");
  RankedCandidates out;
  for (const auto& fs : features) {
    auto ranks = rank_numbers(fs, candidates);
    for (const auto& [w, r] : ranks) out.avg_rank[w] += r;
    out.per_feature_ranks[fs.feature] = std::move(ranks);
  }
  const Rational n(static_cast<std::int64_t>(features.size()));
  for (auto& [w, r] : out.avg_rank) r = r / n;

  out.order.assign(candidates.begin(), candidates.end());
  std::sort(out.order.begin(), out.order.end(), [&](const Word& a, const Word& b) {
    const auto& ra = out.avg_rank.at(a);
    const auto& rb = out.avg_rank.at(b);
    if (ra != rb) return ra < rb;
    const auto fa = freq.count(a);
    const auto fb = freq.count(b);
    if (fa != fb) return fa > fb;
    return a < b;
  });
  return out;
}

std::optional<Word> select_replacement(const RankedCandidates& ranked, const Word& target,
                                       const FrequencyTable& freq) {
  if (ranked.order.empty()) return std::nullopt;
  const Word& first = ranked.order[0];
  if (first != target) return first;
  if (ranked.order.size() < 2) return std::nullopt;
  const Word& second = ranked.order[1];
  if (freq.count(second) > freq.count(target)) return second;
  return std::nullopt;
}

std::vector<FeatureScores> score_candidates(const RankerConfig& config, const LexiconBundle& bundle,
                                            const MlmBackend* backend, const TargetSpan& span,
                                            const std::vector<Word>& candidates) {
  if (config.features.empty()) throw ConfigError("at least one ranking feature must be enabled");
  std::vector<FeatureScores> out;
  for (Feature f : config.features) {
    FeatureScores fs{f, direction(f), {}};
    for (const auto& c : candidates) {
      std::optional<double> v;
      switch (f) {
        case Feature::LmFluency:
          if (backend == nullptr) throw ConfigError("language feature needs a masked LM backend");
          v = lm_fluency(*backend, span, c, config.window);
          break;
        case Feature::EmbSimilarity:
          v = emb_similarity(bundle, span.target, c);
          break;
        case Feature::Frequency:
          v = static_cast<double>(bundle.freq.count(c));
          break;
        case Feature::SememeSimilarity:
          v = sememe_similarity(bundle, span.target, c);
          break;
      }
      fs.values.emplace(c, v);
    }
    out.push_back(std::move(fs));
  }
  return out;
}

}  // namespace lexsimp
