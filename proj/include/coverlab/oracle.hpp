#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coverlab/cover.hpp"
#include "coverlab/formula.hpp"
#include "coverlab/reduction.hpp"

namespace coverlab {

// Input larger than the configured search caps.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A FOUND/NONE answer that contradicts the satisfiability of the formula it
// was computed for. Unreachable unless the pipeline itself is broken, so it
// is an error, not a verdict.
struct OracleInconsistency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleCaps {
  int maxSegmentPoints = 200;
  int maxGuillotinePoints = 12;
  int maxGuillotineCuts = 5;
  // SAT-side certification re-runs the blind cover search only below this
  // size; above it the verified witness cover is the existence proof.
  int maxCertifySearchPoints = 40;
};

struct SegmentSearchResult {
  // Minimum-size cover of size <= limit, or nullopt: a certified
  // "no cover with at most `limit` segments exists".
  std::optional<SegmentCover> cover;
  std::int64_t nodesExplored = 0;
};

// Exhaustive branch-and-bound minimum disjoint-segment cover. Candidates are
// the contiguous runs of instance points along lines through at least two of
// them plus one single-point segment per point; any disjoint cover can be
// shrunk onto that family, so the search is complete. Deterministic: the
// returned witness is the first one found when branching on the lowest-index
// uncovered point and trying its candidates in catalogue order (lines by
// coefficient triple, runs by start ascending then end descending, points
// last).
SegmentSearchResult minSegmentCover(const std::vector<Point>& points,
                                    int limit, const OracleCaps& caps = {});

struct GuillotineSearchResult {
  // Valid cut sequence of length <= limit covering the points, or nullopt:
  // no sequence over the candidate line family works. NONE is relative to
  // the family, not a general impossibility certificate.
  std::optional<CutSequence> cuts;
  std::int64_t nodesExplored = 0;
};

// Bounded search for a guillotine cover. Candidate supporting lines: lines
// through >= 2 instance points, lines through one instance point in the 8
// canonical directions (1,0),(0,1),(1,1),(1,-1),(2,1),(1,2),(2,-1),(1,-2),
// and lines through two intersection points of cuts already placed. Each
// line contributes its maximal pieces with respect to the placed cuts.
GuillotineSearchResult boundedGuillotineSearch(const std::vector<Point>& points,
                                               int limit,
                                               const OracleCaps& caps = {});

struct EquivalenceReport {
  MonotoneFormula formula;
  bool satisfiable = false;
  std::optional<Assignment> model;
  int budget = 0;  // n*m
  // SAT side: the witness cover, accepted by the segment-cover verifier.
  std::optional<SegmentCover> cover;
  // Whether the blind oracle search ran (always on the UNSAT side).
  bool oracleSearched = false;
  std::int64_t nodesExplored = 0;
};

// Certifies one direction of the reduction equivalence on a desk-scale
// formula: SAT and a verified cover of size n*m exists, or UNSAT and the
// oracle proves no cover of size n*m exists. A mismatch between the two
// sides throws OracleInconsistency.
EquivalenceReport certifyReduction(const MonotoneFormula& formula,
                                   const OracleCaps& caps = {});

}  // namespace coverlab
