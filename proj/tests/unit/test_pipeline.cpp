#include <doctest.h>

#include <random>

#include "lexsimp/error.hpp"
#include "lexsimp/io.hpp"
#include "lexsimp/pipeline.hpp"
#include "lexsimp/utf8.hpp"
#include "unit/support.hpp"

using namespace lexsimp;
using lexsimp::testing::make_bundle;
using lexsimp::testing::make_mock;

namespace {

const char* kSynonyms = "荒谬 荒唐 离谱\n行为 举动 所作所为\n";
const char* kFreq = "荒谬\t10\n荒唐\t50\n离谱\t100\n行为\t50\n举动\t1\n所作所为\t200\n";
const char* kValid = "荒唐\n离谱\n举动\n所作所为\n";

RankerConfig only(Feature f) { return {{f}, 5}; }

LexiconSegmenter segmenter() {
  return LexiconSegmenter({{"他", "r"}, {"的", "u"}, {"行为", "n"}, {"很", "d"}, {"荒谬", "a"},
                           {"。", "w"}, {"他的", "x"}});
}

}  // namespace

TEST_CASE("a target without candidates is left alone") {
  const auto b = make_bundle({kSynonyms, kFreq, kValid, ""});
  const auto g = make_generator(Method::Synonym, {}, b, nullptr);
  const PipelineContext ctx{b, nullptr, *g, only(Feature::Frequency)};
  const auto t = simplify_span({"天很蓝", Word("蓝"), 2}, "x", ctx);
  CHECK(t.candidates_final == std::set<Word>{Word("蓝")});
  CHECK_FALSE(t.replacement.has_value());
  CHECK(t.output_sentence == "天很蓝");
}

TEST_CASE("the top-ranked candidate is spliced in") {
  const auto b = make_bundle({kSynonyms, kFreq, kValid, ""});
  const auto g = make_generator(Method::Synonym, {}, b, nullptr);
  const PipelineContext ctx{b, nullptr, *g, only(Feature::Frequency)};
  const auto inst = Instance::make("他的行为很荒谬。", Word("荒谬"), 5, {{Word("荒唐"), Rational(1)}});
  const auto t = simplify_instance(inst, "i1", ctx);
  CHECK(t.instance_id == "i1");
  CHECK(t.ranking.order == std::vector<Word>{Word("离谱"), Word("荒唐"), Word("荒谬")});
  CHECK(t.replacement == Word("离谱"));
  CHECK(t.output_sentence == "他的行为很离谱。");
}

TEST_CASE("the runner-up wins only when more frequent than the target") {
  // The similarity feature always ranks the target first.
  const auto b = make_bundle({kSynonyms, kFreq, kValid, "", "3 2\n荒谬 1 0\n离谱 1 1\n荒唐 0 1\n"});
  const auto g = make_generator(Method::Synonym, {}, b, nullptr);
  const PipelineContext ctx{b, nullptr, *g, only(Feature::EmbSimilarity)};
  const auto t = simplify_span({"很荒谬", Word("荒谬"), 1}, "r", ctx);
  CHECK(t.ranking.order.front() == Word("荒谬"));
  CHECK(t.replacement == Word("离谱"));

  const auto b2 = make_bundle({"荒谬 荒唐\n", "荒谬\t10\n荒唐\t10\n", kValid, "", "2 2\n荒谬 1 0\n荒唐 1 1\n"});
  const auto g2 = make_generator(Method::Synonym, {}, b2, nullptr);
  const PipelineContext ctx2{b2, nullptr, *g2, only(Feature::EmbSimilarity)};
  CHECK_FALSE(simplify_span({"很荒谬", Word("荒谬"), 1}, "r", ctx2).replacement.has_value());
}

TEST_CASE("forward maximum matching segmentation") {
  const auto seg = segmenter().segment("他的行为很荒谬。z");
  std::vector<std::string> texts;
  for (const auto& s : seg) texts.push_back(s.text);
  CHECK(texts == std::vector<std::string>{"他的", "行为", "很", "荒谬", "。", "z"});
  CHECK(seg[1].offset == 2);
  CHECK(seg[3].offset == 5);
  CHECK(seg[5].pos == "x");
  CHECK(is_content_pos("n"));
  CHECK(is_content_pos("vn"));
  CHECK(is_content_pos("adverb"));
  CHECK_FALSE(is_content_pos("r"));
  CHECK_FALSE(is_content_pos("date"));
}

TEST_CASE("sentence mode: nothing to do without content words") {
  const auto b = make_bundle({kSynonyms, kFreq, kValid, ""});
  const auto g = make_generator(Method::Synonym, {}, b, nullptr);
  const PipelineContext ctx{b, nullptr, *g, only(Feature::Frequency)};
  const auto seg = segmenter();
  const auto r = simplify_sentence("他的。", &seg, ctx);
  CHECK(r.traces.empty());
  CHECK(r.output == "他的。");
  CHECK_THROWS_AS(simplify_sentence("他的。", nullptr, ctx), ConfigError);
}

TEST_CASE("sentence mode composes replacements and shifts offsets") {
  const auto b = make_bundle({kSynonyms, kFreq, kValid, ""});
  const auto g = make_generator(Method::Synonym, {}, b, nullptr);
  const PipelineContext ctx{b, nullptr, *g, only(Feature::Frequency)};
  const auto seg = segmenter();
  const auto r = simplify_sentence("他的行为很荒谬。", &seg, ctx, "s");
  REQUIRE(r.traces.size() == 3);  // 行为, 很, 荒谬
  CHECK(r.traces[0].replacement == Word("所作所为"));
  CHECK(r.traces[1].target == Word("很"));
  CHECK(r.traces[2].input_sentence == "他的所作所为很荒谬。");
  CHECK(r.traces[2].offset == 7);
  CHECK(r.traces[2].instance_id == "s.2");
  CHECK(r.output == "他的所作所为很离谱。");
}

TEST_CASE("sentence mode discards winners that are no more frequent") {
  const auto b = make_bundle({kSynonyms, kFreq, kValid, ""});
  const auto g = make_generator(Method::Synonym, {}, b, nullptr);
  // The LM prefers 举 and 动, so 举动 outranks the far more frequent 行为 and 所作所为.
  const auto mock = make_mock("*\t举:0.5,动:0.5\n");
  const PipelineContext ctx{b, &mock, *g, only(Feature::LmFluency)};
  const auto seg = segmenter();
  const auto r = simplify_sentence("他的行为很荒谬。", &seg, ctx);
  REQUIRE(r.traces.size() == 3);
  CHECK(r.traces[0].ranking.order.front() == Word("举动"));
  CHECK_FALSE(r.traces[0].replacement.has_value());
  CHECK(r.traces[0].discarded == Word("举动"));
  CHECK(r.traces[0].output_sentence == "他的行为很荒谬。");
  CHECK(r.traces[2].replacement == Word("离谱"));
  CHECK(r.output == "他的行为很离谱。");
}

TEST_CASE("dataset runs are identical for any worker count") {
  const auto b = make_bundle({kSynonyms, kFreq, kValid, "荒谬\tA|B\n荒唐\tA|B\n", "2 2\n荒谬 1 0\n离谱 1 1\n"});
  const auto mock = make_mock("*\t离:0.4,谱:0.3,举:0.2\n很_。\t荒:0.5,怪:0.25\n");
  const auto g = make_generator(Method::Hybrid, {}, b, &mock);
  const PipelineContext ctx{b, &mock, *g, {}};
  Dataset ds;
  std::mt19937 rng(17);
  const std::vector<std::pair<std::string, std::string>> targets = {
      {"荒谬", "很荒谬。"}, {"行为", "行为很怪。"}, {"怪", "天很怪。"}, {"蓝", "天很蓝。"}};
  for (int i = 0; i < 40; ++i) {
    const auto& [t, s] = targets[rng() % targets.size()];
    const auto off = s.find(t) == 0 ? 0 : utf8::length(s.substr(0, s.find(t)));
    ds.instances.push_back(Instance::make(s, Word(t), off, {{Word("离谱"), Rational(1)}},
                                          "d" + std::to_string(i)));
  }
  auto render = [&](std::size_t workers) {
    std::string out;
    for (const auto& t : simplify_dataset(ds, ctx, workers)) out += io::to_line(io::trace_to_json(t));
    return out;
  };
  const auto one = render(1);
  CHECK(render(4) == one);
  CHECK(render(16) == one);
}
