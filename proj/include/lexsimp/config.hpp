#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>

#include "lexsimp/evaluation.hpp"
#include "lexsimp/generation.hpp"
#include "lexsimp/lexicons.hpp"
#include "lexsimp/mlm.hpp"
#include "lexsimp/ranking.hpp"

namespace lexsimp {

struct MlmSettings {
  std::string backend = "mock";  ///< mock | http
  std::string table;             ///< mock table path
  std::string url;               ///< http backend
  std::string model;
  std::string device = "cpu";
  double ceiling_loss = kDefaultCeilingLoss;

  bool configured() const { return backend == "http" ? !url.empty() : !table.empty(); }
};

/// A run is its config: resources, strategy, ranking features and wiring.
///
///     generator = hybrid            ; synonym|embedding|mlm|sememe|hybrid
///     features  = [language, similarity, frequency, hownet]
///     workers   = 1
///     [resources]
///     synonyms = cilin.txt
///     frequency = freq.tsv
///     valid_words = words.txt
///     sememes = hownet.tsv
///     embeddings = vectors.txt
///     [mlm]
///     backend = mock                ; or http (url, model, device)
///     table = mlm.tsv
///     top_n = 10
///     max_mask_len = 4
///     [embedding]
///     k = 10
///     [lm]
///     window = 5
///     [segmenter]
///     lexicon = tagged.tsv          ; only for raw-text input
///     [evaluation]
///     averaging = micro
///
/// Relative paths are resolved against the config file's directory.
struct RunConfig {
  LexiconPaths lexicons;
  MlmSettings mlm;
  Method generator = Method::Hybrid;
  GenerationParams generation;
  RankerConfig ranker;
  std::string segmenter_lexicon;
  std::size_t workers = 1;
  Averaging averaging = Averaging::Micro;
};

/// Throws ConfigError on unknown keys, bad values or missing resource paths.
RunConfig parse_config(std::istream& in, const std::string& base_dir);
RunConfig load_config(const std::string& path);

/// Builds the configured backend; throws ConfigError/ResourceError.
std::unique_ptr<MlmBackend> make_backend(const MlmSettings& settings);

bool needs_backend(const RunConfig& config);

}  // namespace lexsimp
