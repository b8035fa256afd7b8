#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lexsimp/dataset.hpp"

namespace lexsimp {

/// Synonym groups, one per line of the source file. A word may sit in several
/// groups. HIT-Cilin style lines ("Aa01A01= w1 w2 ...") are accepted: the code
/// column is dropped, and '#' (related-but-not-synonymous) groups are skipped.
class SynonymThesaurus {
 public:
  SynonymThesaurus() = default;
  explicit SynonymThesaurus(const std::vector<std::vector<Word>>& groups);

  static SynonymThesaurus parse(std::istream& in, const std::string& source = "<synonyms>");
  static SynonymThesaurus load(const std::string& path);

  bool contains(const Word& w) const { return groups_.count(w) != 0; }
  /// Union of every group holding `w`, minus `w`.
  std::set<Word> lookup(const Word& w) const;

  std::size_t group_count() const noexcept { return members_.size(); }
  std::size_t word_count() const noexcept { return groups_.size(); }

 private:
  void add_group(std::vector<Word> group);

  std::vector<std::vector<Word>> members_;
  std::unordered_map<Word, std::vector<std::size_t>> groups_;
};

/// Corpus counts; absent words count 0. Repeated lines for one word are summed.
class FrequencyTable {
 public:
  FrequencyTable() = default;
  explicit FrequencyTable(std::unordered_map<Word, std::uint64_t> counts)
      : counts_(std::move(counts)) {}

  static FrequencyTable parse(std::istream& in, const std::string& source = "<frequency>");
  static FrequencyTable load(const std::string& path);

  std::uint64_t count(const Word& w) const;
  std::size_t size() const noexcept { return counts_.size(); }

 private:
  std::unordered_map<Word, std::uint64_t> counts_;
};

class ValidWordList {
 public:
  ValidWordList() = default;
  explicit ValidWordList(std::unordered_set<Word> words) : words_(std::move(words)) {}

  static ValidWordList parse(std::istream& in, const std::string& source = "<valid words>");
  static ValidWordList load(const std::string& path);

  bool contains(const Word& w) const { return words_.count(w) != 0; }
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::unordered_set<Word> words_;
};

/// Sorted, duplicate-free sememe labels describing one sense.
using SememeSet = std::vector<std::string>;

/// HowNet-style sense annotations: each line "word<TAB>s1|s2|..." adds one sense.
class SememeKB {
 public:
  SememeKB() = default;
  explicit SememeKB(const std::vector<std::pair<Word, std::vector<std::string>>>& senses);

  static SememeKB parse(std::istream& in, const std::string& source = "<sememes>");
  static SememeKB load(const std::string& path);

  bool contains(const Word& w) const { return senses_.count(w) != 0; }
  /// Empty when `w` is unknown.
  const std::vector<SememeSet>& senses(const Word& w) const;
  /// Words sharing at least one identical sense with `w`, excluding `w`.
  std::set<Word> same_sense_words(const Word& w) const;
  std::size_t size() const noexcept { return senses_.size(); }

 private:
  void add_sense(const Word& w, std::vector<std::string> sememes);

  std::unordered_map<Word, std::vector<SememeSet>> senses_;
  std::unordered_map<std::string, std::set<Word>> by_sense_;
};

/// Dense word vectors in the common text format ("vocab dim" header line).
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  /// Throws ValidationError on dimension mismatch, zero vectors or duplicates.
  EmbeddingTable(std::size_t dim, const std::vector<std::pair<Word, std::vector<float>>>& rows);

  static EmbeddingTable parse(std::istream& in, const std::string& source = "<embeddings>");
  static EmbeddingTable load(const std::string& path);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return words_.size(); }
  bool contains(const Word& w) const { return index_.count(w) != 0; }
  std::optional<std::size_t> index_of(const Word& w) const;
  const Word& word(std::size_t i) const { return words_[i]; }

  /// Cosine of rows i and j.
  double cosine_at(std::size_t i, std::size_t j) const;

 private:
  void add_row(const Word& w, const std::vector<float>& v);

  std::size_t dim_ = 0;
  std::vector<Word> words_;
  std::vector<float> data_;
  std::vector<double> norms_;
  std::unordered_map<Word, std::size_t> index_;
};

struct LexiconBundle {
  SynonymThesaurus synonyms;
  FrequencyTable freq;
  ValidWordList valid;
  SememeKB sememes;
  EmbeddingTable embeddings;
};

struct LexiconPaths {
  std::string synonyms;
  std::string frequency;
  std::string valid_words;
  std::string sememes;
  std::string embeddings;
};

/// Loads all five resources; the first failure throws ResourceError naming the file.
LexiconBundle load_lexicons(const LexiconPaths& paths);

struct Neighbor {
  Word word;
  double similarity;
};

std::set<Word> lookup_synonyms(const SynonymThesaurus& thesaurus, const Word& w);
std::uint64_t frequency(const FrequencyTable& table, const Word& w);
std::set<Word> sememe_candidates(const SememeKB& kb, const Word& w);
/// nullopt when either word is out of vocabulary.
std::optional<double> cosine(const EmbeddingTable& emb, const Word& a, const Word& b);

/// Top-k words by descending cosine to `w`, never `w` itself. Ties go to the
/// more frequent word, then to the smaller codepoint sequence. Empty when `w`
/// is out of vocabulary.
std::vector<Neighbor> nearest(const EmbeddingTable& emb, const Word& w, std::size_t k,
                              const FrequencyTable& freq);

}  // namespace lexsimp
