#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lexsimp/evaluation.hpp"
#include "lexsimp/generation.hpp"
#include "lexsimp/pipeline.hpp"

namespace lexsimp::io {

using Json = nlohmann::ordered_json;

/// {"id", "method", ["route"], "candidates", "raw"}
Json candidates_to_json(const std::string& id, const CandidateSet& set);

/// Every trace field; maps keyed by word come out in codepoint order.
Json trace_to_json(const SimplificationTrace& trace);
SimplificationTrace trace_from_json(const Json& j);

/// Reads only the fields evaluation needs from a traces file.
/// Throws ParseError naming the line on malformed input.
std::vector<TraceOutcome> read_outcomes(std::istream& in);
std::vector<TraceOutcome> read_outcomes(std::string_view text);

Json report_to_json(const SgReport& sg, const SystemReport& sys, const ErrorReport& errors);

/// One compact JSON document per line.
std::string to_line(const Json& j);

}  // namespace lexsimp::io
