#include "lexsimp/io.hpp"

#include <istream>
#include <sstream>

#include "lexsimp/error.hpp"
#include "lexsimp/json_util.hpp"

namespace lexsimp::io {
namespace {

Json words(const std::set<Word>& ws) {
  auto a = Json::array();
  for (const auto& w : ws) a.push_back(w.str());
  return a;
}

std::set<Word> words_from(const Json& a) {
  std::set<Word> out;
  for (const auto& w : a) out.insert(Word(w.get<std::string>()));
  return out;
}

Json exact(const Rational& r) { return r.str(); }

Json metric(const Rational& r) { return r.to_double(); }

}  // namespace

Json candidates_to_json(const std::string& id, const CandidateSet& set) {
  Json j;
  j["id"] = id;
  j["method"] = std::string(to_string(set.method));
  if (set.route) j["route"] = std::string(to_string(*set.route));
  j["candidates"] = words(set.candidates);
  j["raw"] = words(set.raw);
  return j;
}

Json trace_to_json(const SimplificationTrace& t) {
  Json j;
  j["id"] = t.instance_id;
  j["method"] = std::string(to_string(t.method));
  if (t.route) j["route"] = std::string(to_string(*t.route));
  j["sentence"] = t.input_sentence;
  j["target"] = t.target.str();
  j["offset"] = t.offset;
  j["candidates_raw"] = words(t.candidates_raw);
  j["candidates_final"] = words(t.candidates_final);

  Json scores = Json::object();
  for (const auto& fs : t.scores) {
    Json m = Json::object();
    for (const auto& [w, v] : fs.values) m[w.str()] = v ? Json(*v) : Json();
    scores[std::string(to_string(fs.feature))] = std::move(m);
  }
  j["scores"] = std::move(scores);

  Json ranks = Json::object();
  for (const auto& fs : t.scores) {
    auto it = t.ranking.per_feature_ranks.find(fs.feature);
    if (it == t.ranking.per_feature_ranks.end()) continue;
    Json m = Json::object();
    for (const auto& [w, r] : it->second) m[w.str()] = json_util::from_rational<Json>(r);
    ranks[std::string(to_string(fs.feature))] = std::move(m);
  }
  j["ranks"] = std::move(ranks);

  Json avg = Json::object();
  for (const auto& [w, r] : t.ranking.avg_rank) avg[w.str()] = json_util::from_rational<Json>(r);
  j["avg_rank"] = std::move(avg);

  auto order = Json::array();
  for (const auto& w : t.ranking.order) order.push_back(w.str());
  j["ranked_order"] = std::move(order);
  j["replacement"] = t.replacement ? Json(t.replacement->str()) : Json();
  if (t.discarded) j["discarded"] = t.discarded->str();
  j["output_sentence"] = t.output_sentence;
  return j;
}

SimplificationTrace trace_from_json(const Json& j) {
  SimplificationTrace t;
  t.instance_id = j.at("id").get<std::string>();
  t.method = parse_method(j.at("method").get<std::string>());
  if (j.contains("route")) t.route = parse_method(j["route"].get<std::string>());
  t.input_sentence = j.at("sentence").get<std::string>();
  t.target = Word(j.at("target").get<std::string>());
  t.offset = j.at("offset").get<std::size_t>();
  t.candidates_raw = words_from(j.at("candidates_raw"));
  t.candidates_final = words_from(j.at("candidates_final"));
  for (const auto& [name, m] : j.at("scores").items()) {
    const Feature f = parse_feature(name);
    FeatureScores fs{f, direction(f), {}};
    for (const auto& [w, v] : m.items()) {
      fs.values.emplace(Word(w), v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
    }
    t.scores.push_back(std::move(fs));
  }
  for (const auto& [name, m] : j.at("ranks").items()) {
    auto& ranks = t.ranking.per_feature_ranks[parse_feature(name)];
    for (const auto& [w, r] : m.items()) ranks.emplace(Word(w), json_util::to_rational(r));
  }
  for (const auto& [w, r] : j.at("avg_rank").items()) {
    t.ranking.avg_rank.emplace(Word(w), json_util::to_rational(r));
  }
  for (const auto& w : j.at("ranked_order")) t.ranking.order.emplace_back(w.get<std::string>());
  if (!j.at("replacement").is_null()) t.replacement = Word(j["replacement"].get<std::string>());
  if (j.contains("discarded")) t.discarded = Word(j["discarded"].get<std::string>());
  t.output_sentence = j.at("output_sentence").get<std::string>();
  return t;
}

std::vector<TraceOutcome> read_outcomes(std::istream& in) {
  std::vector<TraceOutcome> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = Json::parse(line);
      TraceOutcome o;
      o.instance_id = j.at("id").get<std::string>();
      o.candidates_final = words_from(j.at("candidates_final"));
      const auto& r = j.at("replacement");
      if (!r.is_null()) o.replacement = Word(r.get<std::string>());
      out.push_back(std::move(o));
    } catch (const Json::exception& e) {
      throw ParseError(lineno, std::string("bad trace: ") + e.what());
    } catch (const ValidationError& e) {
      throw ParseError(lineno, std::string("bad trace: ") + e.what());
    }
  }
  return out;
}

std::vector<TraceOutcome> read_outcomes(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_outcomes(in);
}

Json report_to_json(const SgReport& sg, const SystemReport& sys, const ErrorReport& errors) {
  Json j;
  j["instances"] = sys.rows.size();
  j["averaging"] = sg.averaging == Averaging::Micro ? "micro" : "macro";

  Json s;
  s["potential"] = metric(sg.potential);
  s["precision"] = metric(sg.precision);
  s["recall"] = metric(sg.recall);
  s["f1"] = metric(sg.f1);
  s["exact"] = {{"potential", exact(sg.potential)},
                {"precision", exact(sg.precision)},
                {"recall", exact(sg.recall)},
                {"f1", exact(sg.f1)}};
  j["generation"] = std::move(s);

  Json y;
  y["pre"] = metric(sys.pre_score);
  y["acc"] = metric(sys.acc_score);
  y["changed"] = sys.changed;
  y["auto"] = metric(sys.auto_score);
  y["exact"] = {{"pre", exact(sys.pre_score)},
                {"acc", exact(sys.acc_score)},
                {"auto", exact(sys.auto_score)}};
  j["system"] = std::move(y);

  Json e = Json::object();
  for (std::size_t k = 0; k < kErrorTypes; ++k) {
    e[std::to_string(k + 1)] = {{"count", errors.counts[k].count},
                                {"proportion", metric(errors.counts[k].proportion)},
                                {"exact", exact(errors.counts[k].proportion)}};
  }
  j["errors"] = std::move(e);

  auto rows = Json::array();
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    Json r;
    r["id"] = sys.rows[i].id;
    r["generated"] = sg.rows[i].generated;
    r["gold"] = sg.rows[i].gold;
    r["overlap"] = sg.rows[i].overlap;
    r["final"] = sys.rows[i].final_word.str();
    r["changed"] = sys.rows[i].changed;
    r["final_in_gold"] = sys.rows[i].in_gold;
    auto types = Json::array();
    for (std::size_t k = 0; k < kErrorTypes; ++k) {
      if (errors.rows[i].types[k]) types.push_back(k + 1);
    }
    r["error_types"] = std::move(types);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string to_line(const Json& j) { return j.dump() + "\n"; }

}  // namespace lexsimp::io
