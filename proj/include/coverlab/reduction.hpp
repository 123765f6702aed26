#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "coverlab/formula.hpp"
#include "coverlab/geom.hpp"

namespace coverlab {

// One drawing edge connecting a clause point to a variable point (before
// gadget construction) or to a variable apex (after).
struct SkeletonEdge {
  int clauseIndex;
  int variable;
  Segment seg;
};

// The planar formula drawing: variable points on the x axis, positive clause
// points above, negative below, and straight edges between them.
struct DrawingSkeleton {
  MonotoneFormula formula;
  std::vector<Point> variablePoints;  // index v-1 holds variable v
  std::vector<Point> clausePoints;    // parallel to formula.clauses
  std::vector<SkeletonEdge> edges;
  Rat epsilon;
  bool sheared = false;
};

Rat defaultEpsilon(int m);
Rat defaultDelta(int n, int m);

// Places variable v at (v, 0) and clause c with extreme variables i < k at
// x = (i+k)/2, |y| = (largest span among same-side clauses at c's nesting
// level) - epsilon * level, mirrored below the axis for negative clauses.
// Verifies that the edges are pairwise interior-disjoint and that every edge
// is steeper than |slope| = 4/5, the margin the shear step relies on.
DrawingSkeleton phase1(const MonotoneFormula& formula, const Rat& epsilon);

// Shears the upper half-plane by factor -5/4 and the lower by +5/4, leaving
// the axis fixed. Afterwards every top edge has strictly negative slope and
// every bottom edge strictly positive slope, so all edges lean left; the
// verified slope margin makes this exact, not approximate.
DrawingSkeleton phase2(const DrawingSkeleton& skeleton);

// One of the m lines through a variable apex: either a clause edge or a
// filler added to reach exactly m lines per apex.
struct GadgetLine {
  Line line;
  Segment drawn;  // apex to clause point, or apex to the filler's far end
  bool clauseEdge = false;
  int clauseIndex = -1;
};

// A variable gadget: two apex points straddling the axis with m lines each.
// The pos apex sits below the axis and its lines rise to the positive clause
// points; the neg apex mirrors it. The apexes themselves are not instance
// points; the m*m pairwise crossings are.
struct VariableGadget {
  int variable;
  Point posApex;
  Point negApex;
  std::vector<GadgetLine> posLines;  // size m
  std::vector<GadgetLine> negLines;  // size m
  std::vector<std::vector<Point>> crossings;  // [posIndex][negIndex]
};

struct TaggedPoint {
  Point p;
  bool isClausePoint = false;
  int clauseIndex = -1;
  int variable = -1;
  int posIndex = -1;
  int negIndex = -1;

  // "clause:<c>" or "gadget:<v>:<posIndex>:<negIndex>"
  std::string tag() const;
};

// A gadget line together with the instance points it must contain: its m
// own-gadget crossings, plus its clause point when it is a clause edge, and
// nothing else. The audit checks the catalogue against the point set.
struct CatalogueEntry {
  Line line;
  int variable;
  bool pos;
  int lineIndex;
  bool clauseEdge;
  int clauseIndex;
  std::vector<std::size_t> expected;  // indices into ReductionInstance points
};

struct ReductionInstance {
  MonotoneFormula formula;
  std::vector<TaggedPoint> points;  // clause points first, then gadget points
  int budget = 0;                   // n*m
  Rat epsilon;
  Rat delta;
  int retryIndex = 0;
  std::vector<VariableGadget> gadgets;
  std::vector<CatalogueEntry> catalogue;

  std::size_t clausePointIndex(int clauseIndex) const;
  std::size_t gadgetPointIndex(int variable, int posIndex, int negIndex) const;
  std::vector<Point> plainPoints() const;
};

struct AuditViolation {
  char clause;  // 'a' catalogue mismatch, 'b' stray collinearity,
                // 'c' segment crossing, 'd' crossing placement
  std::string detail;
  std::vector<Point> witness;
};

struct AuditReport {
  std::vector<AuditViolation> violations;
  bool passed() const { return violations.empty(); }
  std::string summary() const;
};

struct ReductionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Retryable: the level offset destroyed a slope margin or edge disjointness.
struct EpsilonTooLarge : ReductionError {
  using ReductionError::ReductionError;
};

// Internal: the shear produced a slope with the wrong sign even though the
// margins were verified. Not retryable.
struct SlopeSignViolation : ReductionError {
  using ReductionError::ReductionError;
};

struct AuditFailure : ReductionError {
  AuditReport report;
  explicit AuditFailure(AuditReport r);
};

struct ConstructionExhausted : ReductionError {
  std::vector<std::string> attempts;
  explicit ConstructionExhausted(std::vector<std::string> log);
};

// Replaces each variable point with a pos apex at (v, -delta) and a neg apex
// at (v + delta/2, +delta), re-anchors clause edges to the apexes, adds
// fillers so each apex carries exactly m lines, and emits the m + n*m^2
// instance points. Runs the audit and throws AuditFailure when it reports
// violations.
ReductionInstance buildGadgets(const DrawingSkeleton& skeleton,
                               const Rat& delta);

// Sets the drawn extent of every line in the gadget from its crossings:
// clause edges run from the apex to their clause point, fillers from the
// apex past their farthest own crossing by factor (1 + delta). Used by the
// builder and by the instance file parser, so both produce identical
// geometry.
void recomputeDrawnSegments(VariableGadget& gadget,
                            const std::vector<Point>& clausePoints,
                            const Rat& delta);

// Checks, in order: (a) every catalogue line contains exactly its expected
// points; (b) every line through three or more instance points is in the
// catalogue (exhaustive triple scan up to 500 points, pair hashing always,
// results cross-checked); (c) drawing segments are pairwise interior-disjoint
// except same-gadget opposite-bundle pairs, which must properly cross;
// (d) every gadget crossing stays within 1/4 of its variable's axis point
// and off all unrelated drawing segments.
AuditReport audit(const ReductionInstance& instance);

struct BuildParams {
  int retries = 16;
  Rat epsilon0 = 0;  // 0 means the default 1/m^2
  Rat delta0 = 0;    // 0 means the default 1/(16*m^2*n)
};

// validate -> phase1 -> phase2 -> buildGadgets, halving epsilon and delta on
// each retry. Asserts that every coordinate stays within the polynomial
// bit-length envelope. Throws ConstructionExhausted with the per-retry
// failure log when no attempt passes the audit.
ReductionInstance buildInstance(const MonotoneFormula& formula,
                                const BuildParams& params = {});

}  // namespace coverlab
