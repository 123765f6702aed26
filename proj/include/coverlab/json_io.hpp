#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "coverlab/cover.hpp"
#include "coverlab/formula.hpp"
#include "coverlab/reduction.hpp"

namespace coverlab {

using Json = nlohmann::ordered_json;

// Malformed file contents: bad JSON, missing fields, wrong types, or values
// that contradict each other (e.g. a point off its catalogued line).
struct JsonFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// { "variables": n, "clauses": [ { "sign": "pos"|"neg", "vars": [..] } ] }
Json formulaToJson(const MonotoneFormula& formula);
MonotoneFormula formulaFromJson(const Json& j);  // structural only, not validated

// { "points": [ { "x": "p/q", "y": "p/q" } ] }
Json pointsToJson(const std::vector<Point>& points);
std::vector<Point> pointsFromJson(const Json& j);

// { "points": [ { "x", "y", "tag" } ], "k": n*m, "epsilon": "p/q",
//   "delta": "p/q", "lines": [ { "a", "b", "c", "variable", "side",
//   "index", "clause", "expected": [..] } ] }
// The gadget geometry is not stored; it is reconstructed exactly from the
// catalogue (apexes sit at known x coordinates on their lines), and the
// result is cross-checked against the expected incidences.
Json instanceToJson(const ReductionInstance& instance);
ReductionInstance instanceFromJson(const Json& j);

// { "segments": [ { "a": ["p/q","p/q"], "b": [..] } ] }, bounded only
Json coverToJson(const SegmentCover& cover);
SegmentCover coverFromJson(const Json& j);

// { "cuts": [ { "a": [..], "b": [..], "unbounded_a": bool,
//   "unbounded_b": bool } ] } in cut order
Json cutsToJson(const CutSequence& cuts);
CutSequence cutsFromJson(const Json& j);

Json verdictToJson(const Verdict& verdict);

// { "values": [bool, ...] }, values[i] is variable i+1
Json assignmentToJson(const Assignment& assignment);
Assignment assignmentFromJson(const Json& j);

// { "mode": "segments"|"guillotine"|"certify", "limit": k,
//   "result": "FOUND"|"NONE"|"NONE_IN_FAMILY", "witness": cover|cuts|null,
//   "nodes_explored": n }
Json oracleReportToJson(const std::string& mode, int limit,
                        const std::string& result, const Json& witness,
                        std::int64_t nodesExplored);

Json readJsonFile(const std::string& path);
// Two-space indent plus trailing newline; the only JSON writer in the
// project, so equal values produce byte-identical files.
void writeJsonFile(const std::string& path, const Json& j);

}  // namespace coverlab
