#include "lexsimp/lexicons.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <regex>
#include <sstream>

#include "lexsimp/error.hpp"

namespace lexsimp {
namespace {

std::ifstream open_resource(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open resource file: " + path);
  return in;
}

[[noreturn]] void fail(const std::string& source, std::size_t lineno, const std::string& what) {
  throw ResourceError(source + ":" + std::to_string(lineno) + ": " + what);
}

// Strips a trailing '\r' and reports whether anything but blanks remains.
bool prepare(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line.find_first_not_of(" \t") != std::string::npos;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

Word make_word(const std::string& text, const std::string& source, std::size_t lineno) {
  try {
    return Word(text);
  } catch (const ValidationError& e) {
    fail(source, lineno, e.what());
  }
}

std::string sense_key(const SememeSet& s) {
  std::string key;
  for (const auto& label : s) {
    key += label;
    key += '\x1f';
  }
  return key;
}

template <typename T>
T load_with(const std::string& path, T (*parse)(std::istream&, const std::string&)) {
  auto in = open_resource(path);
  return parse(in, path);
}

}  // namespace

// ---------------------------------------------------------------------------
// SynonymThesaurus

SynonymThesaurus::SynonymThesaurus(const std::vector<std::vector<Word>>& groups) {
  for (const auto& g : groups) add_group(g);
}

void SynonymThesaurus::add_group(std::vector<Word> group) {
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  if (group.empty()) return;
  const std::size_t id = members_.size();
  for (const auto& w : group) groups_[w].push_back(id);
  members_.push_back(std::move(group));
}

SynonymThesaurus SynonymThesaurus::parse(std::istream& in, const std::string& source) {
  static const std::regex kCilinCode(R"([A-Z][a-z][0-9]{2}[A-Z][0-9]{2}[=#@])");
  SynonymThesaurus th;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!prepare(line)) continue;
    auto tokens = split_ws(line);
    if (std::regex_match(tokens.front(), kCilinCode)) {
      if (tokens.front().back() == '#') continue;
      tokens.erase(tokens.begin());
    }
    std::vector<Word> group;
    for (const auto& t : tokens) group.push_back(make_word(t, source, lineno));
    th.add_group(std::move(group));
  }
  return th;
}

SynonymThesaurus SynonymThesaurus::load(const std::string& path) {
  return load_with<SynonymThesaurus>(path, &SynonymThesaurus::parse);
}

std::set<Word> SynonymThesaurus::lookup(const Word& w) const {
  std::set<Word> out;
  auto it = groups_.find(w);
  if (it == groups_.end()) return out;
  for (std::size_t g : it->second) {
    out.insert(members_[g].begin(), members_[g].end());
  }
  out.erase(w);
  return out;
}

// ---------------------------------------------------------------------------
// FrequencyTable

FrequencyTable FrequencyTable::parse(std::istream& in, const std::string& source) {
  std::unordered_map<Word, std::uint64_t> counts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!prepare(line)) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 2) fail(source, lineno, "expected 'word<TAB>count'");
    const std::string count_text = trim(cols[1]);
    std::uint64_t count = 0;
    std::size_t used = 0;
    try {
      if (count_text.empty() || count_text[0] == '-') throw std::invalid_argument("negative");
      count = std::stoull(count_text, &used);
    } catch (const std::exception&) {
      fail(source, lineno, "count is not a non-negative integer: '" + cols[1] + "'");
    }
    if (used != count_text.size()) fail(source, lineno, "trailing characters after count");
    counts[make_word(trim(cols[0]), source, lineno)] += count;
  }
  return FrequencyTable(std::move(counts));
}

FrequencyTable FrequencyTable::load(const std::string& path) {
  return load_with<FrequencyTable>(path, &FrequencyTable::parse);
}

std::uint64_t FrequencyTable::count(const Word& w) const {
  auto it = counts_.find(w);
  return it == counts_.end() ? 0 : it->second;
}

// ---------------------------------------------------------------------------
// ValidWordList

ValidWordList ValidWordList::parse(std::istream& in, const std::string& source) {
  std::unordered_set<Word> words;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!prepare(line)) continue;
    words.insert(make_word(trim(line), source, lineno));
  }
  return ValidWordList(std::move(words));
}

ValidWordList ValidWordList::load(const std::string& path) {
  return load_with<ValidWordList>(path, &ValidWordList::parse);
}

// ---------------------------------------------------------------------------
// SememeKB

SememeKB::SememeKB(const std::vector<std::pair<Word, std::vector<std::string>>>& senses) {
  for (const auto& [w, s] : senses) {
    if (s.empty()) throw ValidationError("sense of '" + w.str() + "' has no sememes");
    for (const auto& label : s) {
      if (label.empty()) throw ValidationError("empty sememe label for '" + w.str() + "'");
    }
    add_sense(w, s);
  }
}

void SememeKB::add_sense(const Word& w, std::vector<std::string> sememes) {
  std::sort(sememes.begin(), sememes.end());
  sememes.erase(std::unique(sememes.begin(), sememes.end()), sememes.end());
  auto& list = senses_[w];
  if (std::find(list.begin(), list.end(), sememes) != list.end()) return;
  by_sense_[sense_key(sememes)].insert(w);
  list.push_back(std::move(sememes));
}

SememeKB SememeKB::parse(std::istream& in, const std::string& source) {
  SememeKB kb;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!prepare(line)) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 2) fail(source, lineno, "expected 'word<TAB>sememe|sememe|...'");
    std::vector<std::string> labels;
    for (const auto& raw : split(cols[1], '|')) {
      std::string label = trim(raw);
      if (label.empty()) fail(source, lineno, "empty sememe label");
      labels.push_back(std::move(label));
    }
    kb.add_sense(make_word(trim(cols[0]), source, lineno), std::move(labels));
  }
  return kb;
}

SememeKB SememeKB::load(const std::string& path) {
  return load_with<SememeKB>(path, &SememeKB::parse);
}

const std::vector<SememeSet>& SememeKB::senses(const Word& w) const {
  static const std::vector<SememeSet> kNone;
  auto it = senses_.find(w);
  return it == senses_.end() ? kNone : it->second;
}

std::set<Word> SememeKB::same_sense_words(const Word& w) const {
  std::set<Word> out;
  for (const auto& s : senses(w)) {
    const auto& words = by_sense_.at(sense_key(s));
    out.insert(words.begin(), words.end());
  }
  out.erase(w);
  return out;
}

// ---------------------------------------------------------------------------
// EmbeddingTable

EmbeddingTable::EmbeddingTable(std::size_t dim,
                               const std::vector<std::pair<Word, std::vector<float>>>& rows)
    : dim_(dim) {
  if (dim == 0) throw ValidationError("embedding dimension must be positive");
  for (const auto& [w, v] : rows) add_row(w, v);
}

void EmbeddingTable::add_row(const Word& w, const std::vector<float>& v) {
  if (v.size() != dim_) {
    throw ValidationError("vector for '" + w.str() + "' has " + std::to_string(v.size()) +
                          " components, expected " + std::to_string(dim_));
  }
  double sq = 0.0;
  for (float x : v) {
    if (!std::isfinite(x)) throw ValidationError("non-finite component for '" + w.str() + "'");
    sq += static_cast<double>(x) * static_cast<double>(x);
  }
  if (sq == 0.0) throw ValidationError("zero vector for '" + w.str() + "'");
  if (!index_.emplace(w, words_.size()).second)
    throw ValidationError("duplicate embedding row for '" + w.str() + "'");
  words_.push_back(w);
  data_.insert(data_.end(), v.begin(), v.end());
  norms_.push_back(std::sqrt(sq));
}

EmbeddingTable EmbeddingTable::parse(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t vocab = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!prepare(line)) continue;
    const auto head = split_ws(line);
    try {
      if (head.size() != 2) throw std::invalid_argument("header");
      std::size_t u1 = 0, u2 = 0;
      vocab = std::stoull(head[0], &u1);
      dim = std::stoull(head[1], &u2);
      if (u1 != head[0].size() || u2 != head[1].size() || dim == 0)
        throw std::invalid_argument("header");
    } catch (const std::exception&) {
      fail(source, lineno, "expected header 'vocab_size dim'");
    }
    break;
  }
  if (dim == 0) fail(source, lineno, "missing header line");

  EmbeddingTable table;
  table.dim_ = dim;
  std::vector<float> v(dim);
  while (std::getline(in, line)) {
    ++lineno;
    if (!prepare(line)) continue;
    const auto tokens = split_ws(line);
    if (tokens.size() != dim + 1) {
      fail(source, lineno, "expected word and " + std::to_string(dim) + " components, got " +
                               std::to_string(tokens.size()) + " fields");
    }
    for (std::size_t i = 0; i < dim; ++i) {
      std::size_t used = 0;
      try {
        v[i] = std::stof(tokens[i + 1], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tokens[i + 1].size()) fail(source, lineno, "bad component '" + tokens[i + 1] + "'");
    }
    try {
      table.add_row(make_word(tokens[0], source, lineno), v);
    } catch (const ValidationError& e) {
      fail(source, lineno, e.what());
    }
  }
  if (table.size() != vocab) {
    fail(source, lineno, "header announces " + std::to_string(vocab) + " rows, found " +
                             std::to_string(table.size()));
  }
  return table;
}

EmbeddingTable EmbeddingTable::load(const std::string& path) {
  return load_with<EmbeddingTable>(path, &EmbeddingTable::parse);
}

std::optional<std::size_t> EmbeddingTable::index_of(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double EmbeddingTable::cosine_at(std::size_t i, std::size_t j) const {
  const float* a = data_.data() + i * dim_;
  const float* b = data_.data() + j * dim_;
  double dot = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) dot += static_cast<double>(a[k]) * static_cast<double>(b[k]);
  return dot / (norms_[i] * norms_[j]);
}

// ---------------------------------------------------------------------------

LexiconBundle load_lexicons(const LexiconPaths& paths) {
  LexiconBundle b;
  b.synonyms = SynonymThesaurus::load(paths.synonyms);
  b.freq = FrequencyTable::load(paths.frequency);
  b.valid = ValidWordList::load(paths.valid_words);
  b.sememes = SememeKB::load(paths.sememes);
  b.embeddings = EmbeddingTable::load(paths.embeddings);
  return b;
}

std::set<Word> lookup_synonyms(const SynonymThesaurus& thesaurus, const Word& w) {
  return thesaurus.lookup(w);
}

std::uint64_t frequency(const FrequencyTable& table, const Word& w) { return table.count(w); }

std::set<Word> sememe_candidates(const SememeKB& kb, const Word& w) {
  return kb.same_sense_words(w);
}

std::optional<double> cosine(const EmbeddingTable& emb, const Word& a, const Word& b) {
  const auto i = emb.index_of(a);
  const auto j = emb.index_of(b);
  if (!i || !j) return std::nullopt;
  if (*i == *j) return 1.0;
  return emb.cosine_at(*i, *j);
}

std::vector<Neighbor> nearest(const EmbeddingTable& emb, const Word& w, std::size_t k,
                              const FrequencyTable& freq) {
  std::vector<Neighbor> out;
  const auto self = emb.index_of(w);
  if (!self || k == 0) return out;

  struct Scored {
    std::size_t row;
    double sim;
    std::uint64_t freq;
  };
  std::vector<Scored> all;
  all.reserve(emb.size());
  for (std::size_t i = 0; i < emb.size(); ++i) {
    if (i == *self) continue;
    all.push_back({i, emb.cosine_at(*self, i), freq.count(emb.word(i))});
  }
  auto better = [&](const Scored& a, const Scored& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    if (a.freq != b.freq) return a.freq > b.freq;
    return emb.word(a.row) < emb.word(b.row);
  };
  const std::size_t keep = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), better);
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.push_back({emb.word(all[i].row), all[i].sim});
  return out;
}

}  // namespace lexsimp
