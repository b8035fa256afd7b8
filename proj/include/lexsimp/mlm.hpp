#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexsimp {

inline constexpr std::string_view kMaskToken = "[MASK]";
inline constexpr double kDefaultCeilingLoss = 20.0;

/// Model input: a single segment, or a sentence pair split at `pair_boundary`.
struct TokenSequence {
  std::vector<std::string> tokens;
  std::optional<std::size_t> pair_boundary;

  /// Throws ContractError when empty or the boundary is not strictly inside.
  void validate() const;
  bool is_mask(std::size_t position) const {
    return position < tokens.size() && tokens[position] == kMaskToken;
  }
};

struct TokenProb {
  std::string token;
  double prob;
  friend bool operator==(const TokenProb&, const TokenProb&) = default;
};

/// Distribution over the vocabulary at a masked slot, best first.
struct MaskDistribution {
  std::vector<TokenProb> entries;
  friend bool operator==(const MaskDistribution&, const MaskDistribution&) = default;
};

/// Splits text into model tokens: each CJK character is one token, any other
/// run of non-space characters is one token, whitespace is dropped.
std::vector<std::string> tokenize(std::string_view text);

/// Tokens of `sentence` with the `count` characters at `offset` swapped for
/// `middle`. [begin, end) is where `middle` landed.
struct SplicedTokens {
  std::vector<std::string> tokens;
  std::size_t begin = 0;
  std::size_t end = 0;
};
SplicedTokens splice_tokens(std::string_view sentence, std::size_t offset, std::size_t count,
                            const std::vector<std::string>& middle);

/// Masked language model capability. Implementations must be safe for
/// concurrent const calls.
class MlmBackend {
 public:
  explicit MlmBackend(double ceiling_loss = kDefaultCeilingLoss) : ceiling_loss_(ceiling_loss) {}
  virtual ~MlmBackend() = default;

  /// Up to `top_n` tokens for the masked slot at `position`, ordered by
  /// probability descending then codepoint ascending. Throws ContractError
  /// when the slot is not a mask or `top_n` is zero.
  MaskDistribution predict_masked(const TokenSequence& seq, std::size_t position,
                                  std::size_t top_n) const;

  /// Natural-log cross-entropy of `true_token` at the masked slot; the
  /// ceiling loss when the backend gives it no probability.
  double token_loss(const TokenSequence& seq, std::size_t position,
                    const std::string& true_token) const;

  double ceiling_loss() const noexcept { return ceiling_loss_; }

 protected:
  virtual MaskDistribution do_predict(const TokenSequence& seq, std::size_t position,
                                      std::size_t top_n) const = 0;
  /// Probability of `token`; nullopt or 0 when unknown.
  virtual std::optional<double> do_probability(const TokenSequence& seq, std::size_t position,
                                               const std::string& token) const = 0;

 private:
  void check_query(const TokenSequence& seq, std::size_t position) const;
  double ceiling_loss_;
};

MaskDistribution predict_masked(const MlmBackend& backend, const TokenSequence& seq,
                                std::size_t position, std::size_t top_n);
double token_loss(const MlmBackend& backend, const TokenSequence& seq, std::size_t position,
                  const std::string& true_token);

}  // namespace lexsimp
