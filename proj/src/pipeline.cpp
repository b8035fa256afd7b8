#include "lexsimp/pipeline.hpp"

#include <fstream>
#include <istream>

#include "lexsimp/error.hpp"
#include "lexsimp/parallel.hpp"
#include "lexsimp/utf8.hpp"

namespace lexsimp {

SimplificationTrace simplify_span(const TargetSpan& span, std::string id,
                                  const PipelineContext& ctx) {
  SimplificationTrace trace;
  trace.instance_id = std::move(id);
  trace.input_sentence = span.sentence;
  trace.target = span.target;
  trace.offset = span.offset;

  CandidateSet cands = ctx.generator.generate(span);
  trace.method = cands.method;
  trace.route = cands.route;
  trace.candidates_raw = std::move(cands.raw);
  trace.candidates_final = std::move(cands.candidates);

  const std::vector<Word> candidates(trace.candidates_final.begin(), trace.candidates_final.end());
  trace.scores = score_candidates(ctx.ranker, ctx.bundle, ctx.backend, span, candidates);
  trace.ranking = aggregate(trace.scores, candidates, ctx.bundle.freq);
  trace.replacement = select_replacement(trace.ranking, span.target, ctx.bundle.freq);

  trace.output_sentence =
      trace.replacement
          ? utf8::splice(span.sentence, span.offset, span.target.length(), trace.replacement->str())
          : span.sentence;
  return trace;
}

SimplificationTrace simplify_instance(const Instance& inst, std::string id,
                                      const PipelineContext& ctx) {
  return simplify_span(inst.span(), std::move(id), ctx);
}

std::vector<SimplificationTrace> simplify_dataset(const Dataset& dataset,
                                                  const PipelineContext& ctx,
                                                  std::size_t workers) {
  return parallel_map(dataset.instances.size(), workers, [&](std::size_t i) {
    return simplify_instance(dataset.instances[i], dataset.key(i), ctx);
  });
}

bool is_content_pos(std::string_view pos) {
  if (pos.empty()) return false;
  if (pos == "noun" || pos == "verb" || pos == "adj" || pos == "adjective" || pos == "adv" ||
      pos == "adverb")
    return true;
  switch (pos.front()) {
    case 'n': case 'v': case 'a': case 'd':
      // Reject other spelled-out tags sharing a first letter.
      return pos.size() <= 3;
    default:
      return false;
  }
}

LexiconSegmenter::LexiconSegmenter(std::unordered_map<std::string, std::string> tagged_words)
    : words_(std::move(tagged_words)) {
  for (const auto& [w, _] : words_) longest_ = std::max(longest_, utf8::length(w));
}

LexiconSegmenter LexiconSegmenter::parse(std::istream& in, const std::string& source) {
  std::unordered_map<std::string, std::string> words;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
      throw ResourceError(source + ":" + std::to_string(lineno) + ": expected 'word<TAB>pos'");
    const std::string word = line.substr(0, tab);
    if (!Word::try_make(word))
      throw ResourceError(source + ":" + std::to_string(lineno) + ": invalid word '" + word + "'");
    words[word] = line.substr(tab + 1);
  }
  return LexiconSegmenter(std::move(words));
}

LexiconSegmenter LexiconSegmenter::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open segmenter lexicon: " + path);
  return parse(in, path);
}

std::vector<Segment> LexiconSegmenter::segment(std::string_view sentence) const {
  const auto cps = utf8::decode(sentence);
  std::vector<Segment> out;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (utf8::is_whitespace(cps[i])) {
      ++i;
      continue;
    }
    std::size_t len = std::min(longest_, cps.size() - i);
    for (; len > 1; --len) {
      auto it = words_.find(utf8::encode(std::u32string_view(cps).substr(i, len)));
      if (it != words_.end()) break;
    }
    const std::string text = utf8::encode(std::u32string_view(cps).substr(i, len));
    auto it = words_.find(text);
    out.push_back({text, i, it == words_.end() ? "x" : it->second});
    i += len;
  }
  return out;
}

SentenceResult simplify_sentence(std::string_view sentence, const Segmenter* segmenter,
                                 const PipelineContext& ctx, const std::string& id_prefix) {
  if (segmenter == nullptr)
    throw ConfigError("sentence mode needs a segmenter ([segmenter] lexicon = ...)");
  SentenceResult result;
  result.output = std::string(sentence);
  std::ptrdiff_t shift = 0;
  std::size_t n = 0;
  for (const auto& seg : segmenter->segment(sentence)) {
    if (!is_content_pos(seg.pos)) continue;
    auto word = Word::try_make(seg.text);
    if (!word) continue;
    const auto offset = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(seg.offset) + shift);
    TargetSpan span{result.output, *word, offset};
    auto trace = simplify_span(span, id_prefix + "." + std::to_string(n++), ctx);
    if (trace.replacement &&
        ctx.bundle.freq.count(*trace.replacement) <= ctx.bundle.freq.count(*word)) {
      trace.discarded = std::move(trace.replacement);
      trace.replacement.reset();
      trace.output_sentence = trace.input_sentence;
    }
    if (trace.replacement) {
      shift += static_cast<std::ptrdiff_t>(trace.replacement->length()) -
               static_cast<std::ptrdiff_t>(word->length());
      result.output = trace.output_sentence;
    }
    result.traces.push_back(std::move(trace));
  }
  return result;
}

}  // namespace lexsimp
