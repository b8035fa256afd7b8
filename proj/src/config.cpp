#include "lexsimp/config.hpp"

#include <filesystem>
#include <fstream>
#include <istream>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "lexsimp/error.hpp"
#include "lexsimp/http_mlm.hpp"
#include "lexsimp/mock_mlm.hpp"

namespace lexsimp {
namespace {

namespace fs = std::filesystem;
using boost::property_tree::ptree;

std::string resolve(const std::string& base_dir, const std::string& p) {
  if (p.empty()) return p;
  const fs::path path(p);
  if (path.is_absolute() || base_dir.empty()) return p;
  return (fs::path(base_dir) / path).lexically_normal().string();
}

std::size_t positive(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || v < 1)
    throw ConfigError("'" + key + "' must be a positive integer, got '" + text + "'");
  return static_cast<std::size_t>(v);
}

double positive_real(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !(v > 0))
    throw ConfigError("'" + key + "' must be a positive number, got '" + text + "'");
  return v;
}

Averaging parse_averaging(const std::string& text) {
  if (text == "micro") return Averaging::Micro;
  if (text == "macro") return Averaging::Macro;
  throw ConfigError("averaging must be micro or macro, got '" + text + "'");
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& base_dir) {
  ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  RunConfig cfg;
  auto path = [&](const std::string& v) { return resolve(base_dir, v); };
  for (const auto& [section, node] : tree) {
    const std::string value = node.get_value<std::string>();
    if (node.empty()) {
      // Top-level key.
      if (section == "generator") cfg.generator = parse_method(value);
      else if (section == "features") cfg.ranker.features = parse_feature_list(value);
      else if (section == "workers") cfg.workers = positive(section, value);
      else if (section == "averaging") cfg.averaging = parse_averaging(value);
      else throw ConfigError("unknown config key '" + section + "'");
      continue;
    }
    for (const auto& [key, leaf] : node) {
      const std::string v = leaf.get_value<std::string>();
      const std::string full = section + "." + key;
      if (section == "resources") {
        if (key == "synonyms") cfg.lexicons.synonyms = path(v);
        else if (key == "frequency") cfg.lexicons.frequency = path(v);
        else if (key == "valid_words") cfg.lexicons.valid_words = path(v);
        else if (key == "sememes") cfg.lexicons.sememes = path(v);
        else if (key == "embeddings") cfg.lexicons.embeddings = path(v);
        else throw ConfigError("unknown config key '" + full + "'");
      } else if (section == "mlm") {
        if (key == "backend") cfg.mlm.backend = v;
        else if (key == "table") cfg.mlm.table = path(v);
        else if (key == "url") cfg.mlm.url = v;
        else if (key == "model") cfg.mlm.model = v;
        else if (key == "device") cfg.mlm.device = v;
        else if (key == "ceiling_loss") cfg.mlm.ceiling_loss = positive_real(full, v);
        else if (key == "top_n") cfg.generation.mlm_top_n = positive(full, v);
        else if (key == "max_mask_len") cfg.generation.mlm_max_mask_len = positive(full, v);
        else throw ConfigError("unknown config key '" + full + "'");
      } else if (section == "embedding" && key == "k") {
        cfg.generation.embedding_k = positive(full, v);
      } else if (section == "lm" && key == "window") {
        cfg.ranker.window = positive(full, v);
      } else if (section == "ranking" && key == "features") {
        cfg.ranker.features = parse_feature_list(v);
      } else if (section == "generation" && key == "generator") {
        cfg.generator = parse_method(v);
      } else if (section == "segmenter" && key == "lexicon") {
        cfg.segmenter_lexicon = path(v);
      } else if (section == "evaluation" && key == "averaging") {
        cfg.averaging = parse_averaging(v);
      } else if (section == "run" && key == "workers") {
        cfg.workers = positive(full, v);
      } else {
        throw ConfigError("unknown config key '" + full + "'");
      }
    }
  }

  if (cfg.mlm.backend != "mock" && cfg.mlm.backend != "http")
    throw ConfigError("mlm.backend must be mock or http, got '" + cfg.mlm.backend + "'");
  const std::pair<const char*, const std::string*> required[] = {
      {"resources.synonyms", &cfg.lexicons.synonyms},
      {"resources.frequency", &cfg.lexicons.frequency},
      {"resources.valid_words", &cfg.lexicons.valid_words},
      {"resources.sememes", &cfg.lexicons.sememes},
      {"resources.embeddings", &cfg.lexicons.embeddings},
  };
  for (const auto& [key, value] : required) {
    if (value->empty()) throw ConfigError(std::string("missing config key '") + key + "'");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in, fs::path(path).parent_path().string());
}

bool needs_backend(const RunConfig& config) {
  if (config.generator == Method::Mlm || config.generator == Method::Hybrid) return true;
  for (Feature f : config.ranker.features) {
    if (f == Feature::LmFluency) return true;
  }
  return false;
}

std::unique_ptr<MlmBackend> make_backend(const MlmSettings& settings) {
  if (settings.backend == "mock") {
    if (settings.table.empty()) throw ConfigError("mock MLM backend needs mlm.table");
    return std::make_unique<MockMlmBackend>(MockMlmBackend::load(settings.table, settings.ceiling_loss));
  }
  if (settings.backend == "http") {
    HttpMlmBackend::Options o;
    o.url = settings.url;
    o.model = settings.model;
    o.device = settings.device;
    o.ceiling_loss = settings.ceiling_loss;
    auto backend = std::make_unique<HttpMlmBackend>(std::move(o));
    backend->ping();
    return backend;
  }
  throw ConfigError("unknown MLM backend '" + settings.backend + "'");
}

}  // namespace lexsimp
