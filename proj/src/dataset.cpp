#include "lexsimp/dataset.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "lexsimp/error.hpp"
#include "lexsimp/json_util.hpp"
#include "lexsimp/utf8.hpp"

namespace lexsimp {

using nlohmann::ordered_json;

namespace {

bool has_whitespace(std::string_view s) {
  for (char32_t cp : utf8::decode(s)) {
    if (utf8::is_whitespace(cp)) return true;
  }
  return false;
}

std::string describe(const std::optional<std::string>& id, std::size_t index) {
  return id ? "instance '" + *id + "'" : "instance #" + std::to_string(index);
}

Instance instance_from_json(const ordered_json& j) {
  if (!j.is_object()) throw ValidationError("expected a JSON object");
  auto required = [&](const char* field) -> const ordered_json& {
    auto it = j.find(field);
    if (it == j.end()) throw ValidationError(std::string("missing field '") + field + "'");
    return *it;
  };
  const auto& sentence = required("sentence");
  const auto& target = required("target");
  const auto& offset = required("offset");
  const auto& gold = required("gold");
  if (!sentence.is_string()) throw ValidationError("'sentence' must be a string");
  if (!target.is_string()) throw ValidationError("'target' must be a string");
  if (!offset.is_number_integer() || offset.get<std::int64_t>() < 0)
    throw ValidationError("'offset' must be a non-negative integer");
  if (!gold.is_array()) throw ValidationError("'gold' must be an array");

  std::vector<GoldSubstitute> subs;
  for (const auto& g : gold) {
    if (!g.is_object() || !g.contains("word") || !g.contains("rank"))
      throw ValidationError("gold entries need 'word' and 'rank'");
    if (!g["word"].is_string()) throw ValidationError("gold 'word' must be a string");
    if (!g["rank"].is_number()) throw ValidationError("gold 'rank' must be a number");
    subs.push_back({Word(g["word"].get<std::string>()), json_util::to_rational(g["rank"])});
  }

  std::optional<std::string> id;
  std::optional<std::string> pos;
  if (auto it = j.find("id"); it != j.end()) {
    if (!it->is_string()) throw ValidationError("'id' must be a string");
    id = it->get<std::string>();
  }
  if (auto it = j.find("pos"); it != j.end()) {
    if (!it->is_string()) throw ValidationError("'pos' must be a string");
    pos = it->get<std::string>();
  }
  return Instance::make(sentence.get<std::string>(), Word(target.get<std::string>()),
                        offset.get<std::size_t>(), std::move(subs), std::move(id), std::move(pos));
}

}  // namespace

Word::Word(std::string surface) : surface_(std::move(surface)) {
  if (surface_.empty()) throw ValidationError("empty word");
  if (!utf8::valid(surface_)) throw ValidationError("word is not valid UTF-8");
  if (has_whitespace(surface_)) throw ValidationError("word contains whitespace: '" + surface_ + "'");
}

std::optional<Word> Word::try_make(std::string surface) {
  if (surface.empty() || !utf8::valid(surface) || has_whitespace(surface)) return std::nullopt;
  return Word(std::move(surface), Unchecked{});
}

std::size_t Word::length() const { return utf8::length(surface_); }

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.str(); }

Instance::Instance(std::string sentence, Word target, std::size_t offset,
                   std::vector<GoldSubstitute> gold, std::optional<std::string> id,
                   std::optional<std::string> pos)
    : sentence_(std::move(sentence)),
      target_(std::move(target)),
      offset_(offset),
      gold_(std::move(gold)),
      id_(std::move(id)),
      pos_(std::move(pos)) {}

Instance Instance::make(std::string sentence, Word target, std::size_t offset,
                        std::vector<GoldSubstitute> gold, std::optional<std::string> id,
                        std::optional<std::string> pos) {
  if (!utf8::valid(sentence)) throw ValidationError("sentence is not valid UTF-8");
  const std::size_t len = utf8::length(sentence);
  const std::size_t tlen = target.length();
  if (offset + tlen > len || utf8::substr(sentence, offset, tlen) != target.str()) {
    throw ValidationError("target '" + target.str() + "' does not occur at character offset " +
                          std::to_string(offset));
  }
  if (gold.empty()) throw ValidationError("gold list is empty");
  std::set<Word> seen;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].rank <= Rational(0)) throw ValidationError("gold rank must be positive");
    if (i > 0 && gold[i].rank < gold[i - 1].rank)
      throw ValidationError("gold ranks are not in ascending order");
    if (!seen.insert(gold[i].word).second)
      throw ValidationError("duplicate gold word '" + gold[i].word.str() + "'");
  }
  return Instance(std::move(sentence), std::move(target), offset, std::move(gold), std::move(id),
                  std::move(pos));
}

bool Instance::in_gold(const Word& w) const {
  for (const auto& g : gold_) {
    if (g.word == w) return true;
  }
  return false;
}

std::string Dataset::key(std::size_t index) const {
  const auto& id = instances.at(index).id();
  return id ? *id : "#" + std::to_string(index);
}

Dataset parse_dataset(std::istream& in, std::string name) {
  Dataset ds;
  ds.name = std::move(name);
  std::unordered_set<std::string> keys;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const ordered_json::parse_error& e) {
      throw ParseError(lineno, std::string("malformed JSON: ") + e.what());
    }
    const std::size_t index = ds.instances.size();
    std::optional<std::string> id;
    if (j.is_object() && j.contains("id") && j["id"].is_string()) id = j["id"].get<std::string>();
    try {
      ds.instances.push_back(instance_from_json(j));
    } catch (const ValidationError& e) {
      throw ValidationError(describe(id, index) + " (line " + std::to_string(lineno) +
                            "): " + e.what());
    }
    const std::string key = ds.key(index);
    if (!keys.insert(key).second) throw ValidationError("duplicate instance id '" + key + "'");
  }
  return ds;
}

Dataset parse_dataset(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  return parse_dataset(in, std::move(name));
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open dataset file: " + path);
  return parse_dataset(in, path);
}

std::string serialize_instance(const Instance& inst) {
  ordered_json j;
  if (inst.id()) j["id"] = *inst.id();
  j["sentence"] = inst.sentence();
  j["target"] = inst.target().str();
  j["offset"] = inst.offset();
  if (inst.pos()) j["pos"] = *inst.pos();
  auto gold = ordered_json::array();
  for (const auto& g : inst.gold()) {
    ordered_json e;
    e["word"] = g.word.str();
    e["rank"] = json_util::from_rational<ordered_json>(g.rank);
    gold.push_back(std::move(e));
  }
  j["gold"] = std::move(gold);
  return j.dump();
}

std::string serialize_dataset(const Dataset& dataset) {
  std::string out;
  for (const auto& inst : dataset.instances) {
    out += serialize_instance(inst);
    out += '\n';
  }
  return out;
}

}  // namespace lexsimp
