#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "lexsimp/error.hpp"
#include "lexsimp/lexicons.hpp"

using namespace lexsimp;

namespace {

template <typename T>
T parse_text(const std::string& text) {
  std::istringstream in(text);
  return T::parse(in);
}

std::set<Word> words(std::initializer_list<const char*> ws) {
  std::set<Word> out;
  for (const char* w : ws) out.emplace(w);
  return out;
}

}  // namespace

TEST_CASE("synonym lookup") {
  const auto th = parse_text<SynonymThesaurus>("妻子 老婆 媳妇\n丈夫 老公\n");
  CHECK(lookup_synonyms(th, Word("妻子")) == words({"媳妇", "老婆"}));
  CHECK(lookup_synonyms(th, Word("陌生")).empty());
  CHECK(th.contains(Word("老公")));
  CHECK_FALSE(th.contains(Word("陌生")));
}

TEST_CASE("synonym lookup unions every group of the word") {
  const auto th = parse_text<SynonymThesaurus>("w a\nw b c\nd e\n");
  CHECK(lookup_synonyms(th, Word("w")) == words({"a", "b", "c"}));
  CHECK(lookup_synonyms(th, Word("a")) == words({"w"}));
}

TEST_CASE("thesaurus groups and memberships agree") {
  const auto th = parse_text<SynonymThesaurus>("a b c\nc d\ne\n");
  // w in members[g] <=> g in groups[w]: every looked-up synonym sees w back.
  for (const char* w : {"a", "b", "c", "d", "e"}) {
    for (const auto& s : lookup_synonyms(th, Word(w))) {
      CHECK(lookup_synonyms(th, s).count(Word(w)) == 1);
    }
  }
  CHECK(th.group_count() == 3);
  CHECK(th.word_count() == 5);
}

TEST_CASE("HIT-Cilin lines drop the code and skip related-word groups") {
  const auto th = parse_text<SynonymThesaurus>(
      "Aa01A01= 人 士 人物\nAa01A02# 人类 生人\nAa01A03@ 全人类\n");
  CHECK(lookup_synonyms(th, Word("人")) == words({"人物", "士"}));
  CHECK_FALSE(th.contains(Word("人类")));
  CHECK(th.contains(Word("全人类")));
  CHECK(lookup_synonyms(th, Word("全人类")).empty());
}

TEST_CASE("frequency lookup") {
  const auto ft = parse_text<FrequencyTable>("好\t17\n美\t17\n好\t3\n");
  CHECK(frequency(ft, Word("好")) == 20);
  CHECK(frequency(ft, Word("美")) == 17);
  CHECK(frequency(ft, Word("无")) == 0);
  CHECK_THROWS_AS(parse_text<FrequencyTable>("好 17\n"), ResourceError);
  CHECK_THROWS_AS(parse_text<FrequencyTable>("好\t-1\n"), ResourceError);
  CHECK_THROWS_AS(parse_text<FrequencyTable>("好\t1x\n"), ResourceError);
}

TEST_CASE("valid word list is exact match") {
  const auto vl = parse_text<ValidWordList>("可笑\n离谱\n");
  CHECK(vl.contains(Word("可笑")));
  CHECK_FALSE(vl.contains(Word("可")));
  CHECK_FALSE(vl.contains(Word("可笑的")));
}

TEST_CASE("sememe candidates need an identical sense") {
  const auto kb = parse_text<SememeKB>(
      "w\tS1|S2\nx\tS2|S1\ny\tS1|S2|S3\nz\tS9\nz\tS1|S2\n");
  CHECK(sememe_candidates(kb, Word("w")) == words({"x", "z"}));
  CHECK(sememe_candidates(kb, Word("y")).empty());
  CHECK(sememe_candidates(kb, Word("unknown")).empty());
  CHECK(kb.senses(Word("z")).size() == 2);
  CHECK_THROWS_AS(parse_text<SememeKB>("w\tS1||S2\n"), ResourceError);
  CHECK_THROWS_AS(parse_text<SememeKB>("w\n"), ResourceError);
}

TEST_CASE("sememe candidates match a pairwise brute-force scan") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> rows = {
      {"甲", {"A", "B"}}, {"乙", {"B", "A"}}, {"乙", {"C"}}, {"丙", {"C"}},
      {"丁", {"A", "B", "C"}}, {"戊", {"D"}}, {"戊", {"A", "B"}}, {"己", {"E"}}};
  std::string text;
  for (const auto& [w, s] : rows) {
    text += w + "\t";
    for (std::size_t i = 0; i < s.size(); ++i) text += (i ? "|" : "") + s[i];
    text += "\n";
  }
  const auto kb = parse_text<SememeKB>(text);

  // Oracle: compare every pair of words over every pair of senses.
  std::map<std::string, std::vector<std::set<std::string>>> senses;
  for (const auto& [w, s] : rows) senses[w].emplace_back(s.begin(), s.end());
  for (const auto& [w, ws] : senses) {
    std::set<Word> expected;
    for (const auto& [x, xs] : senses) {
      if (x == w) continue;
      bool match = false;
      for (const auto& a : ws)
        for (const auto& b : xs) match = match || a == b;
      if (match) expected.emplace(x);
    }
    CHECK(sememe_candidates(kb, Word(w)) == expected);
    for (const auto& x : expected) CHECK(sememe_candidates(kb, x).count(Word(w)) == 1);
  }
}

TEST_CASE("cosine basics") {
  const auto emb = parse_text<EmbeddingTable>("3 2\na 1 0\nb 0 2\nc 3 4\n");
  CHECK(*cosine(emb, Word("a"), Word("a")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(*cosine(emb, Word("a"), Word("b"))) < 1e-9);
  CHECK(*cosine(emb, Word("a"), Word("c")) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK_FALSE(cosine(emb, Word("a"), Word("zz")).has_value());
}

TEST_CASE("cosine agrees with an independent normalized-dot computation") {
  std::mt19937 rng(7);
  std::normal_distribution<float> g;
  std::vector<std::pair<Word, std::vector<float>>> rows;
  for (int i = 0; i < 10; ++i) {
    std::vector<float> v(8);
    for (auto& x : v) x = g(rng);
    rows.emplace_back(Word("w" + std::to_string(i)), v);
  }
  const EmbeddingTable emb(8, rows);
  for (const auto& [a, va] : rows) {
    for (const auto& [b, vb] : rows) {
      // Second path: normalise first, then take the dot product.
      long double na = 0, nb = 0, dot = 0;
      for (std::size_t k = 0; k < 8; ++k) {
        na += static_cast<long double>(va[k]) * va[k];
        nb += static_cast<long double>(vb[k]) * vb[k];
      }
      na = std::sqrt(na);
      nb = std::sqrt(nb);
      for (std::size_t k = 0; k < 8; ++k) dot += (va[k] / na) * (vb[k] / nb);
      CHECK(std::fabs(*cosine(emb, a, b) - static_cast<double>(dot)) < 1e-9);
    }
  }
}

TEST_CASE("nearest neighbours with known geometry") {
  // t=(1,0). cos(t,a)=1/sqrt2, cos(t,b)=0, cos(t,c)=3/5.
  const auto emb = parse_text<EmbeddingTable>("4 2\nt 1 0\na 1 1\nb 0 1\nc 3 4\n");
  const FrequencyTable freq;
  auto top1 = nearest(emb, Word("t"), 1, freq);
  REQUIRE(top1.size() == 1);
  CHECK(top1[0].word == Word("a"));
  CHECK(top1[0].similarity == doctest::Approx(std::sqrt(0.5)));

  auto all = nearest(emb, Word("t"), 10, freq);
  REQUIRE(all.size() == 3);
  CHECK(all[0].word == Word("a"));
  CHECK(all[1].word == Word("c"));
  CHECK(all[2].word == Word("b"));
  CHECK(nearest(emb, Word("zz"), 3, freq).empty());
}

TEST_CASE("nearest tie-break: frequency, then codepoint order") {
  const auto emb = parse_text<EmbeddingTable>("5 2\nt 1 0\n乙 2 1\n甲 2 1\n丙 4 2\n丁 0 1\n");
  const auto freq = parse_text<FrequencyTable>("丙\t5\n乙\t5\n甲\t9\n");
  const auto n = nearest(emb, Word("t"), 4, freq);
  REQUIRE(n.size() == 4);
  CHECK(n[0].word == Word("甲"));  // highest frequency among the tie
  CHECK(n[1].word == Word("丙"));  // U+4E19 < U+4E59
  CHECK(n[2].word == Word("乙"));
  CHECK(n[3].word == Word("丁"));
}

TEST_CASE("nearest(k) is a prefix of nearest(k+1) and never returns the query") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-2, 2);
  std::vector<std::pair<Word, std::vector<float>>> rows;
  std::unordered_map<Word, std::uint64_t> counts;
  for (int i = 0; i < 30; ++i) {
    std::vector<float> v(3);
    do {
      for (auto& x : v) x = static_cast<float>(d(rng));
    } while (v[0] == 0 && v[1] == 0 && v[2] == 0);
    Word w("v" + std::to_string(i));
    counts[w] = rng() % 4;
    rows.emplace_back(w, v);
  }
  const EmbeddingTable emb(3, rows);
  const FrequencyTable freq(counts);
  for (const auto& [w, _] : rows) {
    for (std::size_t k = 1; k < 30; ++k) {
      const auto a = nearest(emb, w, k, freq);
      const auto b = nearest(emb, w, k + 1, freq);
      REQUIRE(a.size() == k);
      for (std::size_t i = 0; i < k; ++i) CHECK(a[i].word == b[i].word);
      for (const auto& n : b) CHECK(n.word != w);
    }
  }
}

TEST_CASE("embedding file validation") {
  CHECK_THROWS_AS(parse_text<EmbeddingTable>("2 2\na 1 0\n"), ResourceError);          // count
  CHECK_THROWS_AS(parse_text<EmbeddingTable>("1 2\na 1 0 3\n"), ResourceError);        // width
  CHECK_THROWS_AS(parse_text<EmbeddingTable>("1 2\na 0 0\n"), ResourceError);          // zero norm
  CHECK_THROWS_AS(parse_text<EmbeddingTable>("2 2\na 1 0\na 0 1\n"), ResourceError);   // duplicate
  CHECK_THROWS_AS(parse_text<EmbeddingTable>("a 1 0\n"), ResourceError);               // header
  CHECK_THROWS_AS(parse_text<EmbeddingTable>("1 2\na 1 x\n"), ResourceError);
  const auto emb = parse_text<EmbeddingTable>("1 3\na 1 0 2 \n");
  CHECK(emb.dim() == 3);
}

TEST_CASE("bundle loading names the failing file") {
  LexiconPaths p{"/nonexistent/syn.txt", "f", "v", "s", "e"};
  CHECK_THROWS_WITH_AS(load_lexicons(p), doctest::Contains("/nonexistent/syn.txt"), ResourceError);
}
