#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lexsimp/dataset.hpp"
#include "lexsimp/lexicons.hpp"
#include "lexsimp/mlm.hpp"

namespace lexsimp {

enum class Method { Synonym, Embedding, Mlm, Sememe, Hybrid };

std::string_view to_string(Method m);
/// Accepts synonym|embedding|mlm|sememe|hybrid; throws ConfigError otherwise.
Method parse_method(std::string_view name);

/// Substitutes for one target. `raw` is what the strategy proposed;
/// `candidates` is `raw` filtered by the valid-word list plus the target.
struct CandidateSet {
  Method method = Method::Synonym;
  std::optional<Method> route;  ///< strategy actually used by Hybrid
  std::set<Word> raw;
  std::set<Word> candidates;
};

struct GenerationParams {
  std::size_t embedding_k = 10;
  std::size_t mlm_top_n = 10;
  std::size_t mlm_max_mask_len = 4;
};

/// raw ∩ valid words, then ∪ {target}. The target skips the filter.
CandidateSet finalize(Method method, std::set<Word> raw, const LexiconBundle& bundle,
                      const Word& target);

CandidateSet generate_synonym(const LexiconBundle& bundle, const TargetSpan& span);
CandidateSet generate_embedding(const LexiconBundle& bundle, const TargetSpan& span,
                                std::size_t k = 10);
CandidateSet generate_sememe(const LexiconBundle& bundle, const TargetSpan& span);

/// A completed fill of `mask_len` slots and the product of its per-slot probabilities.
struct MaskFill {
  std::string text;
  double score;
};

/// Fills `mask_len` masks that replace the target, left to right, feeding the
/// pair (original sentence, masked sentence). Each partial fill is extended by
/// its `top_n` best next tokens, and after every slot only the `top_n` best
/// partials by probability product survive. Result is best first; no
/// word-list filtering.
std::vector<MaskFill> mlm_fill(const MlmBackend& backend, const TargetSpan& span,
                               std::size_t mask_len, std::size_t top_n);

/// Union of mlm_fill over mask lengths 1..min(target length, max_mask_len),
/// then finalize.
CandidateSet generate_mlm(const MlmBackend& backend, const LexiconBundle& bundle,
                          const TargetSpan& span, std::size_t top_n = 10,
                          std::size_t max_mask_len = 4);

/// Synonym route when the thesaurus knows the target, MLM route otherwise.
CandidateSet generate_hybrid(const MlmBackend& backend, const LexiconBundle& bundle,
                             const TargetSpan& span, std::size_t top_n = 10,
                             std::size_t max_mask_len = 4);

/// Common interface over the five strategies. Implementations hold
/// references to the bundle and backend, which must outlive them.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual Method method() const noexcept = 0;
  virtual CandidateSet generate(const TargetSpan& span) const = 0;
};

/// `backend` may be null only for methods that do not need a language model;
/// otherwise ConfigError.
std::unique_ptr<Generator> make_generator(Method method, const GenerationParams& params,
                                          const LexiconBundle& bundle,
                                          const MlmBackend* backend);

}  // namespace lexsimp
