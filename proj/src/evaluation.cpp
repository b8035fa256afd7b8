#include "lexsimp/evaluation.hpp"

#include <algorithm>
#include <unordered_map>

#include "lexsimp/error.hpp"

namespace lexsimp {
namespace {

Rational ratio(std::size_t num, std::size_t den) {
  if (den == 0) return Rational(0);
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

Rational harmonic(const Rational& p, const Rational& r) {
  const Rational sum = p + r;
  if (sum == Rational(0)) return Rational(0);
  return Rational(2) * p * r / sum;
}

std::set<Word> generated(const TraceOutcome& o, const Instance& inst) {
  std::set<Word> out = o.candidates_final;
  out.erase(inst.target());
  return out;
}

}  // namespace

TraceOutcome outcome_of(const SimplificationTrace& trace) {
  return {trace.instance_id, trace.candidates_final, trace.replacement};
}

std::vector<const TraceOutcome*> align(const std::vector<TraceOutcome>& outcomes,
                                       const Dataset& dataset) {
  std::unordered_map<std::string, const TraceOutcome*> by_id;
  std::vector<std::string> repeated;
  for (const auto& o : outcomes) {
    if (!by_id.emplace(o.instance_id, &o).second) repeated.push_back(o.instance_id);
  }
  std::vector<const TraceOutcome*> aligned;
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < dataset.instances.size(); ++i) {
    const std::string key = dataset.key(i);
    auto it = by_id.find(key);
    if (it == by_id.end()) {
      missing.push_back(key);
    } else {
      aligned.push_back(it->second);
      by_id.erase(it);
    }
  }
  if (missing.empty() && repeated.empty() && by_id.empty()) return aligned;

  std::string msg = "traces do not match the dataset";
  auto list = [&msg](const char* label, const std::vector<std::string>& ids) {
    if (ids.empty()) return;
    msg += std::string("; ") + label + ":";
    for (const auto& id : ids) msg += " " + id;
  };
  std::vector<std::string> unknown;
  for (const auto& [id, _] : by_id) unknown.push_back(id);
  std::sort(unknown.begin(), unknown.end());
  list("missing traces for", missing);
  list("traces for unknown ids", unknown);
  list("repeated trace ids", repeated);
  throw AlignmentError(msg);
}

SgReport sg_metrics(const std::vector<TraceOutcome>& outcomes, const Dataset& dataset,
                    Averaging averaging) {
  const auto aligned = align(outcomes, dataset);
  SgReport report;
  report.averaging = averaging;
  std::size_t hits = 0, overlap = 0, gen_total = 0, gold_total = 0;
  Rational macro_p, macro_r;
  for (std::size_t i = 0; i < aligned.size(); ++i) {
    const Instance& inst = dataset.instances[i];
    const auto gen = generated(*aligned[i], inst);
    SgRow row{dataset.key(i), gen.size(), inst.gold().size(), 0};
    for (const auto& w : gen) {
      if (inst.in_gold(w)) ++row.overlap;
    }
    if (row.overlap > 0) ++hits;
    overlap += row.overlap;
    gen_total += row.generated;
    gold_total += row.gold;
    macro_p += ratio(row.overlap, row.generated);
    macro_r += ratio(row.overlap, row.gold);
    report.rows.push_back(std::move(row));
  }
  const std::size_t n = aligned.size();
  report.potential = ratio(hits, n);
  if (averaging == Averaging::Micro) {
    report.precision = ratio(overlap, gen_total);
    report.recall = ratio(overlap, gold_total);
  } else if (n > 0) {
    report.precision = macro_p / Rational(static_cast<std::int64_t>(n));
    report.recall = macro_r / Rational(static_cast<std::int64_t>(n));
  }
  report.f1 = harmonic(report.precision, report.recall);
  return report;
}

SystemReport system_metrics(const std::vector<TraceOutcome>& outcomes, const Dataset& dataset) {
  const auto aligned = align(outcomes, dataset);
  SystemReport report;
  std::size_t pre = 0;
  for (std::size_t i = 0; i < aligned.size(); ++i) {
    const Instance& inst = dataset.instances[i];
    const Word& final_word = aligned[i]->replacement ? *aligned[i]->replacement : inst.target();
    SystemRow row{dataset.key(i), final_word, final_word != inst.target(), inst.in_gold(final_word)};
    if (!row.changed || row.in_gold) ++pre;
    if (row.changed) ++report.changed;
    if (row.changed && row.in_gold) ++report.correct_changes;
    report.rows.push_back(std::move(row));
  }
  const std::size_t n = aligned.size();
  report.pre_score = ratio(pre, n);
  report.acc_score = ratio(report.correct_changes, n);
  report.auto_score = ratio(report.correct_changes, report.changed);
  return report;
}

ErrorReport categorize_errors(const std::vector<TraceOutcome>& outcomes, const Dataset& dataset,
                              const FrequencyTable& freq) {
  const auto aligned = align(outcomes, dataset);
  ErrorReport report;
  report.instances = aligned.size();
  for (std::size_t i = 0; i < aligned.size(); ++i) {
    const Instance& inst = dataset.instances[i];
    const TraceOutcome& o = *aligned[i];
    const auto target_freq = freq.count(inst.target());
    const auto gen = generated(o, inst);

    bool any_simpler = false;
    for (const auto& c : gen) any_simpler = any_simpler || freq.count(c) > target_freq;

    ErrorRow row{dataset.key(i), {}};
    auto& t = row.types;
    t[1] = gen.empty();
    t[2] = !t[1] && !any_simpler;
    if (o.replacement) {
      const bool gold = inst.in_gold(*o.replacement);
      const bool simpler = freq.count(*o.replacement) > target_freq;
      t[3] = !gold;
      t[4] = gold && !simpler;
      t[0] = gold && simpler;
    } else {
      t[4] = any_simpler;
    }
    for (std::size_t k = 0; k < kErrorTypes; ++k) {
      if (t[k]) ++report.counts[k].count;
    }
    report.rows.push_back(std::move(row));
  }
  for (auto& c : report.counts) c.proportion = ratio(c.count, report.instances);
  return report;
}

}  // namespace lexsimp
