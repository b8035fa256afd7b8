#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexsimp/rational.hpp"

namespace lexsimp {

/// A non-empty, whitespace-free UTF-8 string. Ordering is bytewise, which for
/// UTF-8 coincides with codepoint order.
class Word {
 public:
  /// Throws ValidationError on empty, whitespace-containing or invalid UTF-8 text.
  explicit Word(std::string surface);

  static std::optional<Word> try_make(std::string surface);

  const std::string& str() const noexcept { return surface_; }
  /// Length in codepoints.
  std::size_t length() const;

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;

 private:
  struct Unchecked {};
  Word(std::string surface, Unchecked) : surface_(std::move(surface)) {}
  std::string surface_;
};

std::ostream& operator<<(std::ostream& os, const Word& w);

struct GoldSubstitute {
  Word word;
  Rational rank;
  friend bool operator==(const GoldSubstitute&, const GoldSubstitute&) = default;
};

/// A target word located in a sentence; what the pipeline actually works on.
struct TargetSpan {
  std::string sentence;
  Word target;
  std::size_t offset = 0;  ///< codepoint index of the target's first character
};

/// One evaluation unit. Immutable once built; `make` enforces every invariant.
class Instance {
 public:
  static Instance make(std::string sentence, Word target, std::size_t offset,
                       std::vector<GoldSubstitute> gold,
                       std::optional<std::string> id = std::nullopt,
                       std::optional<std::string> pos = std::nullopt);

  const std::string& sentence() const noexcept { return sentence_; }
  const Word& target() const noexcept { return target_; }
  /// Codepoint index of the target's first character.
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<GoldSubstitute>& gold() const noexcept { return gold_; }
  const std::optional<std::string>& id() const noexcept { return id_; }
  const std::optional<std::string>& pos() const noexcept { return pos_; }

  bool in_gold(const Word& w) const;
  TargetSpan span() const { return {sentence_, target_, offset_}; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Instance(std::string sentence, Word target, std::size_t offset, std::vector<GoldSubstitute> gold,
           std::optional<std::string> id, std::optional<std::string> pos);

  std::string sentence_;
  Word target_;
  std::size_t offset_ = 0;
  std::vector<GoldSubstitute> gold_;
  std::optional<std::string> id_;
  std::optional<std::string> pos_;
};

struct Dataset {
  std::string name;
  std::vector<Instance> instances;

  /// Explicit id when present, otherwise "#<index>".
  std::string key(std::size_t index) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Reads JSON-lines instances. Blank lines are skipped. Throws ParseError
/// (with the line number) for malformed lines and ValidationError naming the
/// instance for invariant violations or duplicate keys.
Dataset parse_dataset(std::istream& in, std::string name = {});
Dataset parse_dataset(std::string_view text, std::string name = {});
Dataset load_dataset(const std::string& path);

std::string serialize_instance(const Instance& inst);
std::string serialize_dataset(const Dataset& dataset);

}  // namespace lexsimp

template <>
struct std::hash<lexsimp::Word> {
  std::size_t operator()(const lexsimp::Word& w) const noexcept {
    return std::hash<std::string>{}(w.str());
  }
};
