#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "lexsimp/error.hpp"
#include "lexsimp/generation.hpp"
#include "unit/support.hpp"

using namespace lexsimp;
using lexsimp::testing::make_bundle;
using lexsimp::testing::make_mock;

namespace {

std::set<Word> words(std::initializer_list<const char*> ws) {
  std::set<Word> out;
  for (const char* w : ws) out.emplace(w);
  return out;
}

TargetSpan span(const std::string& sentence, const char* target, std::size_t offset) {
  return {sentence, Word(target), offset};
}

}  // namespace

TEST_CASE("method names round-trip") {
  for (Method m : {Method::Synonym, Method::Embedding, Method::Mlm, Method::Sememe, Method::Hybrid})
    CHECK(parse_method(to_string(m)) == m);
  CHECK_THROWS_AS(parse_method("bert"), ConfigError);
}

TEST_CASE("synonym generation filters by the word list and keeps the target") {
  const auto b = make_bundle({"荒谬 荒唐 离谱 悖谬\n", "", "荒唐\n离谱\n", ""});
  const auto c = generate_synonym(b, span("他的行为很荒谬。", "荒谬", 5));
  CHECK(c.method == Method::Synonym);
  CHECK(c.raw == words({"悖谬", "离谱", "荒唐"}));
  CHECK(c.candidates == words({"离谱", "荒唐", "荒谬"}));
  const auto none = generate_synonym(b, span("很陌生", "陌生", 1));
  CHECK(none.raw.empty());
  CHECK(none.candidates == words({"陌生"}));
}

TEST_CASE("finalize equals (raw ∩ valid) ∪ {target} on random strings") {
  std::mt19937 rng(5);
  const std::vector<std::string> alphabet = {"甲", "乙", "丙", "丁", "戊"};
  auto random_word = [&] {
    std::string s;
    const int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) s += alphabet[rng() % alphabet.size()];
    return Word(s);
  };
  std::unordered_set<Word> valid;
  for (int i = 0; i < 40; ++i) valid.insert(random_word());
  LexiconBundle b;
  b.valid = ValidWordList(valid);
  std::set<Word> raw;
  for (int i = 0; i < 50; ++i) raw.insert(random_word());
  const Word target("己");
  std::set<Word> expected{target};
  for (const auto& w : raw)
    if (valid.count(w)) expected.insert(w);
  const auto c = finalize(Method::Embedding, raw, b, target);
  CHECK(c.candidates == expected);
  CHECK(c.raw == raw);
}

TEST_CASE("embedding generation keeps the k nearest by angle") {
  // Target at angle 0, w1..w11 at 5, 10, ..., 55 degrees: the ten nearest are w1..w10.
  std::string emb = "12 2\nt 1 0\n";
  std::string valid;
  for (int i = 1; i <= 11; ++i) {
    const double a = i * 5.0 * M_PI / 180.0;
    emb += "w" + std::to_string(i) + " " + std::to_string(std::cos(a)) + " " +
           std::to_string(std::sin(a)) + "\n";
    valid += "w" + std::to_string(i) + "\n";
  }
  const auto b = make_bundle({"", "", valid, "", emb});
  const auto c = generate_embedding(b, span("t", "t", 0), 10);
  std::set<Word> expected{Word("t")};
  for (int i = 1; i <= 10; ++i) expected.insert(Word("w" + std::to_string(i)));
  CHECK(c.candidates == expected);
  CHECK(c.raw.count(Word("w11")) == 0);
  CHECK(generate_embedding(b, span("t", "t", 0), 3).raw == words({"w1", "w2", "w3"}));
  CHECK(generate_embedding(b, span("zz", "zz", 0), 3).candidates == words({"zz"}));
}

TEST_CASE("sememe generation") {
  const auto b = make_bundle({"", "", "容易\n简单\n", "简便\tEasy\n容易\tEasy\n简单\tEasy|Simple\n简单\tEasy\n"});
  const auto c = generate_sememe(b, span("很简便", "简便", 1));
  CHECK(c.raw == words({"容易", "简单"}));
  CHECK(c.candidates == words({"容易", "简单", "简便"}));
}

TEST_CASE("mlm generation for a one-character target") {
  const auto mock = make_mock("他很_。\t忙:0.5,困:0.3,好:0.1\n");
  const auto b = make_bundle({"", "", "忙\n好\n", ""});
  const auto s = span("他很累。", "累", 2);
  const auto fills = mlm_fill(mock, s, 1, 2);
  REQUIRE(fills.size() == 2);
  CHECK(fills[0].text == "忙");
  CHECK(fills[1].text == "困");
  const auto c = generate_mlm(mock, b, s, 2, 4);
  CHECK(c.raw == words({"困", "忙"}));
  CHECK(c.candidates == words({"忙", "累"}));
  CHECK(generate_mlm(mock, make_bundle({}), s, 3, 4).candidates == words({"累"}));
}

TEST_CASE("two-slot fill matches enumerate-then-truncate on random tables") {
  const std::string sentence = "他的行为很荒谬。";
  const auto s = span(sentence, "荒谬", 5);
  const std::vector<std::string> vocab = {"可", "笑", "离", "谱", "荒", "唐", "怪", "异"};
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(0.01, 1.0);

  auto random_row = [&](std::size_t n) {
    std::vector<std::string> toks = vocab;
    std::shuffle(toks.begin(), toks.end(), rng);
    toks.resize(n);
    std::vector<double> w(n);
    double sum = 0;
    for (auto& x : w) sum += (x = u(rng));
    std::vector<TokenProb> row;
    for (std::size_t i = 0; i < n; ++i) row.push_back({toks[i], w[i] / sum * 0.999});
    return row;
  };
  auto best = [](std::vector<TokenProb> row, std::size_t n) {
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) {
      return a.prob != b.prob ? a.prob > b.prob : a.token < b.token;
    });
    if (row.size() > n) row.resize(n);
    return row;
  };

  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t top_n = 1 + rng() % 4;
    MockMlmBackend::Table table;
    const std::string first_key = "他的行为很_[MASK]。";
    table[first_key] = random_row(5);
    for (const auto& c1 : vocab) table["他的行为很" + c1 + "_。"] = random_row(4);
    const MockMlmBackend mock(table);

    // Oracle: every first token in the top n, each followed by its top n.
    std::vector<std::pair<double, std::string>> pairs;
    for (const auto& a : best(table[first_key], top_n))
      for (const auto& b : best(table["他的行为很" + a.token + "_。"], top_n))
        pairs.emplace_back(a.prob * b.prob, a.token + b.token);
    std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    std::vector<std::string> expected;
    for (const auto& [p, t] : pairs)
      if (expected.size() < top_n && std::find(expected.begin(), expected.end(), t) == expected.end())
        expected.push_back(t);

    std::vector<std::string> got;
    for (const auto& f : mlm_fill(mock, s, 2, top_n)) got.push_back(f.text);
    CHECK(got == expected);
  }
}

TEST_CASE("mask lengths are capped by the target length and max_mask_len") {
  // Only the single-mask row exists, so longer fills die out; the union is the one-slot fill.
  const auto mock = make_mock("他的行为很_。\t怪:0.5\n");
  const auto b = make_bundle({"", "", "怪\n", ""});
  const auto c = generate_mlm(mock, b, span("他的行为很荒谬。", "荒谬", 5), 5, 1);
  CHECK(c.candidates == words({"怪", "荒谬"}));
  CHECK_THROWS_AS(mlm_fill(mock, span("他的行为很荒谬。", "荒谬", 5), 0, 1), ContractError);
}

TEST_CASE("hybrid routes by thesaurus membership") {
  const auto b = make_bundle({"妻子 老婆\n丈夫 老公\n美丽 漂亮\n", "", "老婆\n老公\n漂亮\n忙\n好\n", ""});
  const auto mock = make_mock("*\t忙:0.5,好:0.25\n");
  const std::vector<TargetSpan> in_thesaurus = {span("我的妻子", "妻子", 2), span("她丈夫", "丈夫", 1),
                                                span("很美丽", "美丽", 1)};
  const std::vector<TargetSpan> outside = {span("他很累", "累", 2), span("天很蓝", "蓝", 2),
                                           span("路很长", "长", 2)};
  for (const auto& s : in_thesaurus) {
    const auto c = generate_hybrid(mock, b, s);
    CHECK(c.method == Method::Hybrid);
    CHECK(c.route == Method::Synonym);
    CHECK(c.candidates == generate_synonym(b, s).candidates);
  }
  for (const auto& s : outside) {
    const auto c = generate_hybrid(mock, b, s);
    CHECK(c.route == Method::Mlm);
    CHECK(c.candidates == generate_mlm(mock, b, s).candidates);
    CHECK(c.candidates.count(Word("忙")) == 1);
  }
}

TEST_CASE("generator factory") {
  const auto b = make_bundle({"a b\n", "", "b\n", ""});
  const auto mock = make_mock("*\tb:1\n");
  CHECK_THROWS_AS(make_generator(Method::Mlm, {}, b, nullptr), ConfigError);
  CHECK_THROWS_AS(make_generator(Method::Hybrid, {}, b, nullptr), ConfigError);
  CHECK_THROWS_AS(make_generator(Method::Synonym, {0, 10, 4}, b, nullptr), ConfigError);
  const auto g = make_generator(Method::Synonym, {}, b, nullptr);
  CHECK(g->method() == Method::Synonym);
  CHECK(g->generate(span("a", "a", 0)).candidates == words({"a", "b"}));
  const auto h = make_generator(Method::Mlm, {}, b, &mock);
  CHECK(h->generate(span("c", "c", 0)).candidates == words({"b", "c"}));
}
