#include "lexsimp/generation.hpp"

#include <algorithm>
#include <unordered_set>

#include "lexsimp/error.hpp"

namespace lexsimp {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Synonym: return "synonym";
    case Method::Embedding: return "embedding";
    case Method::Mlm: return "mlm";
    case Method::Sememe: return "sememe";
    case Method::Hybrid: return "hybrid";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::Synonym, Method::Embedding, Method::Mlm, Method::Sememe, Method::Hybrid}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown generator '" + std::string(name) +
                    "' (expected synonym|embedding|mlm|sememe|hybrid)");
}

CandidateSet finalize(Method method, std::set<Word> raw, const LexiconBundle& bundle,
                      const Word& target) {
  CandidateSet out;
  out.method = method;
  for (const auto& w : raw) {
    if (bundle.valid.contains(w)) out.candidates.insert(w);
  }
  out.candidates.insert(target);
  out.raw = std::move(raw);
  return out;
}

CandidateSet generate_synonym(const LexiconBundle& bundle, const TargetSpan& span) {
  return finalize(Method::Synonym, lookup_synonyms(bundle.synonyms, span.target), bundle,
                  span.target);
}

CandidateSet generate_embedding(const LexiconBundle& bundle, const TargetSpan& span,
                                std::size_t k) {
  if (k == 0) throw ContractError("embedding k must be at least 1");
  std::set<Word> raw;
  for (auto& n : nearest(bundle.embeddings, span.target, k, bundle.freq)) raw.insert(std::move(n.word));
  return finalize(Method::Embedding, std::move(raw), bundle, span.target);
}

CandidateSet generate_sememe(const LexiconBundle& bundle, const TargetSpan& span) {
  return finalize(Method::Sememe, sememe_candidates(bundle.sememes, span.target), bundle,
                  span.target);
}

std::vector<MaskFill> mlm_fill(const MlmBackend& backend, const TargetSpan& span,
                               std::size_t mask_len, std::size_t top_n) {
  if (mask_len == 0 || top_n == 0) throw ContractError("mask length and top_n must be positive");
  const std::size_t tlen = span.target.length();
  const auto original =
      splice_tokens(span.sentence, span.offset, tlen, tokenize(span.target.str()));
  const auto masked = splice_tokens(span.sentence, span.offset, tlen,
                                    std::vector<std::string>(mask_len, std::string(kMaskToken)));

  TokenSequence seq;
  seq.tokens = original.tokens;
  seq.tokens.insert(seq.tokens.end(), masked.tokens.begin(), masked.tokens.end());
  seq.pair_boundary = original.tokens.size();
  const std::size_t first_slot = original.tokens.size() + masked.begin;

  struct Partial {
    std::vector<std::string> fills;
    std::string text;
    double score;
  };
  auto better = [](const Partial& a, const Partial& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.text < b.text;
  };

  std::vector<Partial> beam{{{}, {}, 1.0}};
  for (std::size_t depth = 0; depth < mask_len; ++depth) {
    std::vector<Partial> next;
    for (const auto& partial : beam) {
      for (std::size_t i = 0; i < depth; ++i) seq.tokens[first_slot + i] = partial.fills[i];
      const auto dist = backend.predict_masked(seq, first_slot + depth, top_n);
      for (const auto& e : dist.entries) {
        if (e.token == kMaskToken) continue;
        Partial p{partial.fills, partial.text + e.token, partial.score * e.prob};
        p.fills.push_back(e.token);
        next.push_back(std::move(p));
      }
    }
    for (std::size_t i = 0; i < depth; ++i) seq.tokens[first_slot + i] = std::string(kMaskToken);

    std::sort(next.begin(), next.end(), better);
    std::vector<Partial> kept;
    std::unordered_set<std::string> seen;
    for (auto& p : next) {
      if (kept.size() == top_n) break;
      if (seen.insert(p.text).second) kept.push_back(std::move(p));
    }
    beam = std::move(kept);
    if (beam.empty()) break;
  }

  std::vector<MaskFill> out;
  out.reserve(beam.size());
  for (auto& p : beam) out.push_back({std::move(p.text), p.score});
  return out;
}

CandidateSet generate_mlm(const MlmBackend& backend, const LexiconBundle& bundle,
                          const TargetSpan& span, std::size_t top_n, std::size_t max_mask_len) {
  if (top_n == 0 || max_mask_len == 0) throw ContractError("top_n and max_mask_len must be positive");
  const std::size_t longest = std::min(span.target.length(), max_mask_len);
  std::set<Word> raw;
  for (std::size_t len = 1; len <= longest; ++len) {
    for (auto& fill : mlm_fill(backend, span, len, top_n)) {
      if (auto w = Word::try_make(std::move(fill.text))) raw.insert(std::move(*w));
    }
  }
  return finalize(Method::Mlm, std::move(raw), bundle, span.target);
}

CandidateSet generate_hybrid(const MlmBackend& backend, const LexiconBundle& bundle,
                             const TargetSpan& span, std::size_t top_n, std::size_t max_mask_len) {
  CandidateSet out;
  if (bundle.synonyms.contains(span.target)) {
    out = generate_synonym(bundle, span);
    out.route = Method::Synonym;
  } else {
    out = generate_mlm(backend, bundle, span, top_n, max_mask_len);
    out.route = Method::Mlm;
  }
  out.method = Method::Hybrid;
  return out;
}

namespace {

class LexiconGenerator final : public Generator {
 public:
  LexiconGenerator(Method m, const GenerationParams& p, const LexiconBundle& b)
      : method_(m), params_(p), bundle_(b) {}
  Method method() const noexcept override { return method_; }
  CandidateSet generate(const TargetSpan& span) const override {
    switch (method_) {
      case Method::Synonym: return generate_synonym(bundle_, span);
      case Method::Embedding: return generate_embedding(bundle_, span, params_.embedding_k);
      case Method::Sememe: return generate_sememe(bundle_, span);
      default: throw ContractError("lexicon generator cannot run " + std::string(to_string(method_)));
    }
  }

 private:
  Method method_;
  GenerationParams params_;
  const LexiconBundle& bundle_;
};

class ModelGenerator final : public Generator {
 public:
  ModelGenerator(Method m, const GenerationParams& p, const LexiconBundle& b, const MlmBackend& be)
      : method_(m), params_(p), bundle_(b), backend_(be) {}
  Method method() const noexcept override { return method_; }
  CandidateSet generate(const TargetSpan& span) const override {
    if (method_ == Method::Hybrid) {
      return generate_hybrid(backend_, bundle_, span, params_.mlm_top_n, params_.mlm_max_mask_len);
    }
    return generate_mlm(backend_, bundle_, span, params_.mlm_top_n, params_.mlm_max_mask_len);
  }

 private:
  Method method_;
  GenerationParams params_;
  const LexiconBundle& bundle_;
  const MlmBackend& backend_;
};

}  // namespace

std::unique_ptr<Generator> make_generator(Method method, const GenerationParams& params,
                                          const LexiconBundle& bundle,
                                          const MlmBackend* backend) {
  if (params.embedding_k == 0) throw ConfigError("embedding.k must be at least 1");
  if (params.mlm_top_n == 0) throw ConfigError("mlm.top_n must be at least 1");
  if (params.mlm_max_mask_len == 0) throw ConfigError("mlm.max_mask_len must be at least 1");
  if (method == Method::Mlm || method == Method::Hybrid) {
    if (backend == nullptr)
      throw ConfigError(std::string(to_string(method)) + " generator needs a masked LM backend");
    return std::make_unique<ModelGenerator>(method, params, bundle, *backend);
  }
  return std::make_unique<LexiconGenerator>(method, params, bundle);
}

}  // namespace lexsimp
