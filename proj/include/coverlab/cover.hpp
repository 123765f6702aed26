#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coverlab/geom.hpp"

namespace coverlab {

// Unordered set of bounded segments meant to cover a point set. Validity is
// a verifier verdict, not a construction invariant.
struct SegmentCover {
  std::vector<Segment> segments;
};

// Ordered sequence of cuts. Order is significant: cut i may only be blocked
// by cuts 1..i-1. Unbounded ends are allowed, degenerate cuts are not.
struct CutSequence {
  std::vector<Segment> cuts;
};

enum class ViolationCode {
  None,
  UnboundedSegment,
  UncoveredPoint,
  SegmentsNotDisjoint,
  BudgetExceeded,
  DegenerateCut,
  ProperIntersectionWithEarlier,
  CutNotMaximal,
};

std::string violationCodeName(ViolationCode code);

struct Verdict {
  bool accepted = false;
  ViolationCode code = ViolationCode::None;
  int indexA = -1;
  int indexB = -1;
  std::optional<Point> where;
  std::string detail;

  static Verdict accept();
  static Verdict reject(ViolationCode code, int indexA, int indexB,
                        std::optional<Point> where, std::string detail);
};

// ACCEPT iff every point lies on some segment, the segments are pairwise
// strictly disjoint (no shared points at all), and |segments| <= budget.
// Checked in that order; the verdict carries the first violation found,
// with the lexicographically smallest uncovered point as witness.
Verdict verifySegmentCover(const std::vector<Point>& points,
                           const SegmentCover& cover, int budget);

// ACCEPT iff, in order: no cut properly intersects an earlier cut; every cut
// is maximal (each bounded endpoint lies in the relative interior of some
// earlier cut on a different line, so any strict extension would properly
// cross it; unbounded ends are trivially maximal); every point lies on some
// cut; and |cuts| <= budget.
Verdict verifyGuillotineSequence(const std::vector<Point>& points,
                                 const CutSequence& seq, int budget);

// Raised by extendToGuillotine when a previous cut already properly crosses
// the target, which means the caller emitted cuts in an impossible order.
struct TargetBlocked : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The maximal sub-interval of `line` containing `target` that properly
// crosses no previous cut. Each end is bounded exactly where a previous cut
// blocks it (a transversal cut whose relative interior meets the line) and
// unbounded otherwise. `target` must lie on `line`.
Segment extendToGuillotine(const Line& line, const Segment& target,
                           const CutSequence& previous);

// Trims a valid cut sequence into a disjoint segment cover of the same
// points: each point is assigned to the lowest-index cut containing it, each
// cut shrinks to the convex hull of its assigned points, and empty cuts are
// dropped. The result has at most |seq| segments.
SegmentCover shortenCuts(const std::vector<Point>& points,
                         const CutSequence& seq);

}  // namespace coverlab
