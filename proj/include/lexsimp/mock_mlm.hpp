#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lexsimp/mlm.hpp"

namespace lexsimp {

/// Deterministic table-driven stand-in for a masked language model.
///
/// Table lines are `key<TAB>token:prob,token:prob,...`. A query at a masked
/// slot is answered by the first row whose key matches, trying in order:
///
///   1. the slot's whole segment, tokens concatenated, with the queried slot
///      written as `_` (other masks stay `[MASK]`), e.g. `他很_地走了`;
///   2. the immediate neighbours `left_right`, with `^` / `$` standing in at
///      segment edges, e.g. `很_地`;
///   3. the fallback row keyed `*`.
///
/// For sentence pairs the segment is the half that contains the slot. When no
/// row matches the distribution is empty and every loss is the ceiling.
class MockMlmBackend final : public MlmBackend {
 public:
  using Table = std::map<std::string, std::vector<TokenProb>>;

  /// Throws ValidationError if a row breaks the distribution invariants
  /// (probabilities in (0,1], sum <= 1 + 1e-6, unique tokens).
  explicit MockMlmBackend(Table table, double ceiling_loss = kDefaultCeilingLoss);

  static MockMlmBackend parse(std::istream& in, const std::string& source = "<mock table>",
                              double ceiling_loss = kDefaultCeilingLoss);
  static MockMlmBackend load(const std::string& path, double ceiling_loss = kDefaultCeilingLoss);

  /// Keys tried for a query, most specific first.
  static std::vector<std::string> lookup_keys(const TokenSequence& seq, std::size_t position);

  const Table& table() const noexcept { return table_; }

 protected:
  MaskDistribution do_predict(const TokenSequence& seq, std::size_t position,
                              std::size_t top_n) const override;
  std::optional<double> do_probability(const TokenSequence& seq, std::size_t position,
                                       const std::string& token) const override;

 private:
  const std::vector<TokenProb>* row_for(const TokenSequence& seq, std::size_t position) const;
  Table table_;
};

}  // namespace lexsimp
