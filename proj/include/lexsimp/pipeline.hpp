#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexsimp/dataset.hpp"
#include "lexsimp/generation.hpp"
#include "lexsimp/lexicons.hpp"
#include "lexsimp/mlm.hpp"
#include "lexsimp/ranking.hpp"

namespace lexsimp {

/// Everything one target went through, from generation to the output sentence.
struct SimplificationTrace {
  std::string instance_id;
  Method method = Method::Synonym;
  std::optional<Method> route;
  std::string input_sentence;
  Word target{"?"};
  std::size_t offset = 0;
  std::set<Word> candidates_raw;
  std::set<Word> candidates_final;
  std::vector<FeatureScores> scores;
  RankedCandidates ranking;
  std::optional<Word> replacement;
  /// Sentence mode only: a winner dropped for not being more frequent than the original.
  std::optional<Word> discarded;
  std::string output_sentence;
};

/// Shared, read-only state for a run. All referenced objects must outlive it.
struct PipelineContext {
  const LexiconBundle& bundle;
  const MlmBackend* backend;
  const Generator& generator;
  RankerConfig ranker;
};

/// generate -> finalize -> score -> aggregate -> select -> splice.
SimplificationTrace simplify_span(const TargetSpan& span, std::string id,
                                  const PipelineContext& ctx);
SimplificationTrace simplify_instance(const Instance& inst, std::string id,
                                      const PipelineContext& ctx);

/// One trace per instance in dataset order, using up to `workers` threads.
std::vector<SimplificationTrace> simplify_dataset(const Dataset& dataset,
                                                  const PipelineContext& ctx,
                                                  std::size_t workers = 1);

struct Segment {
  std::string text;
  std::size_t offset;  ///< codepoint offset in the sentence
  std::string pos;
};

/// Word segmentation plus part-of-speech tagging.
class Segmenter {
 public:
  virtual ~Segmenter() = default;
  virtual std::vector<Segment> segment(std::string_view sentence) const = 0;
};

/// Nouns, verbs, adjectives and adverbs: tags starting with n, v, a or d
/// (ICTCLAS/PKU style) or spelled out (noun, verb, adj, adjective, adv, adverb).
bool is_content_pos(std::string_view pos);

/// Forward maximum matching over a tagged word list (`word<TAB>pos` per line).
/// Unknown characters become single-character segments tagged "x".
class LexiconSegmenter final : public Segmenter {
 public:
  explicit LexiconSegmenter(std::unordered_map<std::string, std::string> tagged_words);
  static LexiconSegmenter parse(std::istream& in, const std::string& source = "<segmenter>");
  static LexiconSegmenter load(const std::string& path);

  std::vector<Segment> segment(std::string_view sentence) const override;

 private:
  std::unordered_map<std::string, std::string> words_;
  std::size_t longest_ = 1;
};

struct SentenceResult {
  std::string output;
  std::vector<SimplificationTrace> traces;
};

/// Simplifies every content word left to right, each against the sentence
/// as already rewritten. A replacement no more frequent than the word it
/// replaces is discarded. Throws ConfigError when `segmenter` is null.
SentenceResult simplify_sentence(std::string_view sentence, const Segmenter* segmenter,
                                 const PipelineContext& ctx, const std::string& id_prefix = "s");

}  // namespace lexsimp
