#include "lexsimp/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lexsimp/config.hpp"
#include "lexsimp/error.hpp"
#include "lexsimp/io.hpp"
#include "lexsimp/parallel.hpp"
#include "lexsimp/pipeline.hpp"

namespace lexsimp::cli {
namespace {

struct Options {
  std::string config;
  std::string generator;
  std::string features;
  std::size_t workers = 0;
  bool macro = false;
  bool text = false;
  std::string out;
  std::string input;
  std::string traces;
};

RunConfig effective_config(const Options& o) {
  RunConfig cfg = load_config(o.config);
  if (!o.generator.empty()) cfg.generator = parse_method(o.generator);
  if (!o.features.empty()) cfg.ranker.features = parse_feature_list(o.features);
  if (o.workers > 0) cfg.workers = o.workers;
  if (o.macro) cfg.averaging = Averaging::Macro;
  return cfg;
}

/// Resources and backend, loaded and validated before any instance is read.
struct Runtime {
  RunConfig cfg;
  LexiconBundle bundle;
  std::unique_ptr<MlmBackend> backend;
  std::unique_ptr<Generator> generator;

  explicit Runtime(RunConfig c) : cfg(std::move(c)) {
    bundle = load_lexicons(cfg.lexicons);
    if (cfg.mlm.configured()) {
      backend = make_backend(cfg.mlm);
    } else if (needs_backend(cfg)) {
      throw ConfigError("generator/features need a masked LM: set mlm.table (mock) or mlm.url (http)");
    }
    generator = make_generator(cfg.generator, cfg.generation, bundle, backend.get());
  }

  PipelineContext context() const { return {bundle, backend.get(), *generator, cfg.ranker}; }
};

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  const std::string tmp = o.out + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write output file: " + o.out);
    f << text;
    if (!f) throw ConfigError("failed writing output file: " + o.out);
  }
  std::filesystem::rename(tmp, o.out);
}

int cmd_generate(const Options& o, std::ostream& out) {
  Runtime rt(effective_config(o));
  const Dataset ds = load_dataset(o.input);
  const auto lines = parallel_map(ds.instances.size(), rt.cfg.workers, [&](std::size_t i) {
    return io::to_line(io::candidates_to_json(ds.key(i), rt.generator->generate(ds.instances[i].span())));
  });
  std::string text;
  for (const auto& l : lines) text += l;
  emit(o, text, out);
  return kExitOk;
}

int cmd_simplify(const Options& o, std::ostream& out) {
  Runtime rt(effective_config(o));
  const auto ctx = rt.context();
  std::string text;
  if (!o.text) {
    const Dataset ds = load_dataset(o.input);
    for (const auto& trace : simplify_dataset(ds, ctx, rt.cfg.workers)) {
      text += io::to_line(io::trace_to_json(trace));
    }
  } else {
    if (rt.cfg.segmenter_lexicon.empty())
      throw ConfigError("raw-text input needs [segmenter] lexicon = PATH");
    const auto segmenter = LexiconSegmenter::load(rt.cfg.segmenter_lexicon);
    std::ifstream in(o.input, std::ios::binary);
    if (!in) throw ResourceError("cannot open input file: " + o.input);
    std::vector<std::string> sentences;
    for (std::string line; std::getline(in, line);) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      sentences.push_back(std::move(line));
    }
    const auto lines = parallel_map(sentences.size(), rt.cfg.workers, [&](std::size_t i) {
      const auto res = simplify_sentence(sentences[i], &segmenter, ctx, std::to_string(i + 1));
      io::Json j;
      j["line"] = i + 1;
      j["input"] = sentences[i];
      j["output"] = res.output;
      auto traces = io::Json::array();
      for (const auto& t : res.traces) traces.push_back(io::trace_to_json(t));
      j["traces"] = std::move(traces);
      return io::to_line(j);
    });
    for (const auto& l : lines) text += l;
  }
  emit(o, text, out);
  return kExitOk;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  const RunConfig cfg = effective_config(o);
  // Only the frequency list is needed; the rest must still exist.
  for (const auto* p : {&cfg.lexicons.synonyms, &cfg.lexicons.valid_words, &cfg.lexicons.sememes,
                        &cfg.lexicons.embeddings}) {
    if (!std::filesystem::exists(*p)) throw ResourceError("resource file not found: " + *p);
  }
  const auto freq = FrequencyTable::load(cfg.lexicons.frequency);

  const Dataset ds = load_dataset(o.input);
  std::ifstream tin(o.traces, std::ios::binary);
  if (!tin) throw ResourceError("cannot open traces file: " + o.traces);
  const auto outcomes = io::read_outcomes(tin);

  const auto sg = sg_metrics(outcomes, ds, cfg.averaging);
  const auto sys = system_metrics(outcomes, ds);
  const auto errs = categorize_errors(outcomes, ds, freq);
  emit(o, io::report_to_json(sg, sys, errs).dump(2) + "\n", out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chinese lexical simplification toolkit"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Run configuration file")->required();
    sub->add_option("--generator", o.generator, "synonym|embedding|mlm|sememe|hybrid");
    sub->add_option("--features", o.features, "Ranking features, e.g. language,frequency");
    sub->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "Output file (default: stdout)");
  };
  auto* gen = app.add_subcommand("generate", "Generate substitute candidates per instance");
  common(gen);
  gen->add_option("dataset", o.input, "Dataset (JSON lines)")->required();

  auto* simp = app.add_subcommand("simplify", "Run the full pipeline and emit traces");
  common(simp);
  simp->add_option("input", o.input, "Dataset (JSON lines), or raw text with --text")->required();
  simp->add_flag("--text", o.text, "Input is raw sentences, one per line");

  auto* eval = app.add_subcommand("evaluate", "Score traces against a dataset");
  common(eval);
  eval->add_option("dataset", o.input, "Dataset (JSON lines)")->required();
  eval->add_option("traces", o.traces, "Traces from `simplify`")->required();
  eval->add_flag("--macro", o.macro, "Macro-average precision and recall");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (gen->parsed()) return cmd_generate(o, out);
    if (simp->parsed()) return cmd_simplify(o, out);
    return cmd_evaluate(o, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const ValidationError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const AlignmentError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace lexsimp::cli
