#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lexsimp/dataset.hpp"
#include "lexsimp/lexicons.hpp"
#include "lexsimp/pipeline.hpp"
#include "lexsimp/rational.hpp"

namespace lexsimp {

enum class Averaging { Micro, Macro };

/// What evaluation needs from a trace. Built from in-memory traces or from a
/// traces file.
struct TraceOutcome {
  std::string instance_id;
  std::set<Word> candidates_final;
  std::optional<Word> replacement;
};

TraceOutcome outcome_of(const SimplificationTrace& trace);

/// Pairs dataset instances with their outcome by id, in dataset order.
/// Throws AlignmentError listing ids missing on either side or repeated.
std::vector<const TraceOutcome*> align(const std::vector<TraceOutcome>& outcomes,
                                       const Dataset& dataset);

struct SgRow {
  std::string id;
  std::size_t generated = 0;  ///< candidates excluding the target
  std::size_t gold = 0;
  std::size_t overlap = 0;
};

struct SgReport {
  Averaging averaging = Averaging::Micro;
  Rational potential, precision, recall, f1;
  std::vector<SgRow> rows;
};

struct SystemRow {
  std::string id;
  Word final_word{"?"};
  bool changed = false;
  bool in_gold = false;
};

struct SystemReport {
  Rational pre_score, acc_score;
  std::size_t changed = 0;
  std::size_t correct_changes = 0;
  Rational auto_score;
  std::vector<SystemRow> rows;
};

inline constexpr std::size_t kErrorTypes = 5;

struct ErrorCount {
  std::size_t count = 0;
  Rational proportion;
};

struct ErrorRow {
  std::string id;
  std::array<bool, kErrorTypes> types{};  ///< types[k] is error type k+1
};

struct ErrorReport {
  std::size_t instances = 0;
  std::array<ErrorCount, kErrorTypes> counts{};
  std::vector<ErrorRow> rows;
};

/// Potential / Precision / Recall / F1 over generated candidates, the target
/// excluded. Micro mode sums over the corpus; macro mode averages per-instance
/// precision and recall (0 when an instance generated nothing).
SgReport sg_metrics(const std::vector<TraceOutcome>& outcomes, const Dataset& dataset,
                    Averaging averaging = Averaging::Micro);

/// PRE, ACC, Changed and Auto for final words (replacement, else the target).
SystemReport system_metrics(const std::vector<TraceOutcome>& outcomes, const Dataset& dataset);

/// Per instance, with "simpler" meaning strictly more frequent than the target:
///   2  no candidate besides the target;
///   3  candidates exist but none is simpler;
///   4  a replacement was made that is not in gold;
///   5  a gold replacement that is not simpler, or no replacement although a
///      simpler candidate was available;
///   1  a simpler gold replacement (and then none of 2-5).
ErrorReport categorize_errors(const std::vector<TraceOutcome>& outcomes, const Dataset& dataset,
                              const FrequencyTable& freq);

}  // namespace lexsimp
