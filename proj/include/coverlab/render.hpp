#pragma once

#include <stdexcept>
#include <string>

#include "coverlab/cover.hpp"
#include "coverlab/reduction.hpp"

namespace coverlab {

// Cover or cuts that cannot come from the instance being drawn (unbounded
// cover segments, degenerate cuts, or segments through none of its points).
struct InconsistentInputs : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RenderSpec {
  Rat scale = Rat(1);  // multiplies the default 100 px per unit
  bool points = true;
  bool drawing = true;
  bool cover = true;
  bool cuts = true;
  bool gadgetZoom = false;  // per-gadget insets; delta-scale detail
  bool labelCuts = true;
};

// Deterministic SVG text. Canvas is the bounding box of all bounded geometry
// plus a 10% margin; unbounded cut ends are clipped to it and tipped with
// arrowheads. All coordinates are printed with exactly 9 fractional digits
// computed from the rationals, never through floating point, so identical
// inputs give byte-identical documents.
std::string renderSvg(const ReductionInstance& instance,
                      const SegmentCover* cover, const CutSequence* cuts,
                      const RenderSpec& spec = {});

}  // namespace coverlab
