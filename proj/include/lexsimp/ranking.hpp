#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "lexsimp/dataset.hpp"
#include "lexsimp/lexicons.hpp"
#include "lexsimp/mlm.hpp"
#include "lexsimp/rational.hpp"

namespace lexsimp {

enum class Feature { LmFluency, EmbSimilarity, Frequency, SememeSimilarity };
enum class Direction { LowerBetter, HigherBetter };

inline constexpr Feature kAllFeatures[] = {Feature::LmFluency, Feature::EmbSimilarity,
                                           Feature::Frequency, Feature::SememeSimilarity};

Direction direction(Feature f) noexcept;
/// Config names: language, similarity, frequency, hownet.
std::string_view to_string(Feature f);
Feature parse_feature(std::string_view name);
/// "[language, frequency]" or "language,frequency". Throws ConfigError when
/// empty, unknown or repeated.
std::vector<Feature> parse_feature_list(std::string_view text);

/// One feature's raw score per candidate; nullopt marks an undefined score.
struct FeatureScores {
  Feature feature;
  Direction direction;
  std::map<Word, std::optional<double>> values;
};

struct RankedCandidates {
  std::map<Feature, std::map<Word, Rational>> per_feature_ranks;
  std::map<Word, Rational> avg_rank;
  /// Ascending average rank; ties go to higher frequency, then codepoint order.
  std::vector<Word> order;
};

/// Mean cross-entropy over the candidate's tokens and up to `window` tokens on
/// each side, after splicing the candidate into the sentence. Every position
/// of that window is masked in turn and scored against its true token.
double lm_fluency(const MlmBackend& backend, const TargetSpan& span, const Word& candidate,
                  std::size_t window = 5);

/// Embedding cosine; 1.0 for the target itself, nullopt if either word is OOV.
std::optional<double> emb_similarity(const LexiconBundle& bundle, const Word& target,
                                     const Word& candidate);

/// Best Jaccard overlap between any sense of `target` and any sense of
/// `candidate`; 0 when either is unknown, 1.0 for a known target itself.
double sememe_similarity(const LexiconBundle& bundle, const Word& target, const Word& candidate);

/// Fractional ranking (best = 1, ties share the mean position). Undefined
/// scores rank after every defined one. Throws ContractError on duplicate
/// candidates.
std::map<Word, Rational> rank_numbers(const FeatureScores& scores,
                                      const std::vector<Word>& candidates);

/// Throws ContractError when `features` or `candidates` is empty.
RankedCandidates aggregate(const std::vector<FeatureScores>& features,
                           const std::vector<Word>& candidates, const FrequencyTable& freq);

/// Top-ranked word if it is not the target; else the runner-up when it is
/// strictly more frequent than the target; else nothing.
std::optional<Word> select_replacement(const RankedCandidates& ranked, const Word& target,
                                       const FrequencyTable& freq);

struct RankerConfig {
  std::vector<Feature> features{std::begin(kAllFeatures), std::end(kAllFeatures)};
  std::size_t window = 5;
};

/// Scores every candidate under each enabled feature. `backend` is only
/// needed when the language feature is on (ConfigError otherwise).
std::vector<FeatureScores> score_candidates(const RankerConfig& config, const LexiconBundle& bundle,
                                            const MlmBackend* backend, const TargetSpan& span,
                                            const std::vector<Word>& candidates);

}  // namespace lexsimp
