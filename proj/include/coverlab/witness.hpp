#pragma once

#include <stdexcept>
#include <string>

#include "coverlab/cover.hpp"
#include "coverlab/formula.hpp"
#include "coverlab/reduction.hpp"

namespace coverlab {

struct WitnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The assignment leaves a clause with no true literal.
struct UnsatisfiedAssignment : WitnessError {
  int clauseIndex;
  explicit UnsatisfiedAssignment(int clauseIndex);
};

// The constructed segments touch each other; impossible for audited
// instances, reachable only through inconsistent hand-built input.
struct ExtensionCollision : WitnessError {
  using WitnessError::WitnessError;
};

// Neither the right-to-left bundle order nor any bundle permutation
// extends the cover into a valid guillotine sequence.
struct OrderingFailure : WitnessError {
  using WitnessError::WitnessError;
};

// Builds the n*m segment cover encoding the assignment: each variable
// contributes its pos bundle when true, its neg bundle when false. Every
// bundle line covers its m own crossings; the line that is the clause edge
// of the lowest-indexed true literal additionally stretches to the clause
// point, so each clause point is covered exactly once. Apexes are never
// covered. Throws UnsatisfiedAssignment if some clause has no true literal.
SegmentCover assignmentToCover(const ReductionInstance& instance,
                               const Assignment& assignment);

// Turns the cover into exactly n*m guillotine cuts. Bundles are processed
// rightmost-first (apex x descending); within a bundle its m cuts are
// emitted right-to-left by supporting-line x-intercept. Each cut is the
// maximal extension of its cover segment past the earlier cuts, so the
// first cut is a full line and later ones stop where they are blocked.
// While a bundle is emitted under this order, every still-uncovered point
// must stay strictly on one side of each of its cut lines; if that check
// fails, or a segment gets clipped, the converter retries every bundle
// permutation (n <= 6) in lexicographic order and returns the first one
// whose cuts all contain their segments. Throws OrderingFailure when no
// permutation works.
CutSequence coverToGuillotine(const ReductionInstance& instance,
                              const SegmentCover& cover);

}  // namespace coverlab
