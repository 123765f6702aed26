#include "coverlab/witness.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

namespace coverlab {

UnsatisfiedAssignment::UnsatisfiedAssignment(int clauseIndex)
    : WitnessError("clause " + std::to_string(clauseIndex) +
                   " has no true literal"),
      clauseIndex(clauseIndex) {}

SegmentCover assignmentToCover(const ReductionInstance& instance,
                               const Assignment& assignment) {
  const MonotoneFormula& f = instance.formula;
  const int n = f.n();
  const int m = f.m();
  if (assignment.values.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("assignment size does not match formula");

  // lowest-indexed true literal covers the clause point
  std::vector<int> extender(static_cast<std::size_t>(m), -1);
  for (int c = 0; c < m; ++c) {
    const Clause& cl = f.clauses[static_cast<std::size_t>(c)];
    for (const int v : cl.vars) {
      const bool wantTrue = cl.sign == Sign::Pos;
      if (assignment.value(v) == wantTrue) {
        extender[static_cast<std::size_t>(c)] = v;
        break;
      }
    }
    if (extender[static_cast<std::size_t>(c)] < 0)
      throw UnsatisfiedAssignment(c);
  }

  SegmentCover cover;
  for (int v = 1; v <= n; ++v) {
    const VariableGadget& g = instance.gadgets[static_cast<std::size_t>(v) - 1];
    const bool useTrueSide = assignment.value(v);
    const auto& lines = useTrueSide ? g.posLines : g.negLines;
    for (int idx = 0; idx < m; ++idx) {
      const GadgetLine& gl = lines[static_cast<std::size_t>(idx)];
      std::vector<Point> hull;
      for (int o = 0; o < m; ++o) {
        hull.push_back(useTrueSide
                           ? g.crossings[static_cast<std::size_t>(idx)]
                                        [static_cast<std::size_t>(o)]
                           : g.crossings[static_cast<std::size_t>(o)]
                                        [static_cast<std::size_t>(idx)]);
      }
      if (gl.clauseEdge &&
          extender[static_cast<std::size_t>(gl.clauseIndex)] == v) {
        hull.push_back(
            instance.points[instance.clausePointIndex(gl.clauseIndex)].p);
      }
      // all bundle lines are non-vertical, so x orders points along them
      const auto byX = [](const Point& a, const Point& b) { return a.x < b.x; };
      const Point lo = *std::min_element(hull.begin(), hull.end(), byX);
      const Point hi = *std::max_element(hull.begin(), hull.end(), byX);
      cover.segments.push_back(lo == hi ? Segment::point(lo)
                                        : Segment::bounded(lo, hi));
    }
  }

  for (std::size_t i = 0; i < cover.segments.size(); ++i) {
    for (std::size_t j = i + 1; j < cover.segments.size(); ++j) {
      if (!segmentsDisjoint(cover.segments[i], cover.segments[j]))
        throw ExtensionCollision("cover segments " + std::to_string(i) +
                                 " and " + std::to_string(j) + " touch");
    }
  }
  return cover;
}

namespace {

struct BundleCut {
  Line line;
  Segment target;
  int variable;
  int index;
};

struct Bundle {
  Rat apexX;
  std::vector<BundleCut> cuts;  // x-intercept descending
};

std::string cutLabel(const BundleCut& bc) {
  return "cut " + std::to_string(bc.index) + " of variable " +
         std::to_string(bc.variable);
}

// Groups the cover into per-variable bundles, pairing each segment with the
// gadget line it lies on. Bundles come out rightmost apex first, each with
// its cuts ordered by descending x-intercept.
std::vector<Bundle> splitIntoBundles(const ReductionInstance& instance,
                                     const SegmentCover& cover) {
  const int n = instance.formula.n();
  const int m = instance.formula.m();
  if (cover.segments.size() !=
      static_cast<std::size_t>(n) * static_cast<std::size_t>(m))
    throw WitnessError("cover has " + std::to_string(cover.segments.size()) +
                       " segments, expected " + std::to_string(n * m));

  std::vector<Bundle> bundles;
  for (int v = 1; v <= n; ++v) {
    const VariableGadget& g = instance.gadgets[static_cast<std::size_t>(v) - 1];
    const auto onLines = [&](const std::vector<GadgetLine>& lines) {
      for (int idx = 0; idx < m; ++idx) {
        const Segment& s =
            cover.segments[static_cast<std::size_t>((v - 1) * m + idx)];
        const Line& line = lines[static_cast<std::size_t>(idx)].line;
        if (!line.contains(s.a) || !line.contains(s.b)) return false;
      }
      return true;
    };
    const bool pos = onLines(g.posLines);
    if (!pos && !onLines(g.negLines))
      throw WitnessError("cover segments of variable " + std::to_string(v) +
                         " do not lie on either bundle");
    const auto& lines = pos ? g.posLines : g.negLines;
    Bundle b;
    b.apexX = (pos ? g.posApex : g.negApex).x;
    for (int idx = 0; idx < m; ++idx) {
      b.cuts.push_back(
          {lines[static_cast<std::size_t>(idx)].line,
           cover.segments[static_cast<std::size_t>((v - 1) * m + idx)], v,
           idx});
    }
    std::sort(b.cuts.begin(), b.cuts.end(),
              [](const BundleCut& a, const BundleCut& c) {
                return a.line.xIntercept() > c.line.xIntercept();
              });
    bundles.push_back(std::move(b));
  }
  std::sort(bundles.begin(), bundles.end(),
            [](const Bundle& a, const Bundle& b) { return a.apexX > b.apexX; });
  return bundles;
}

std::optional<CutSequence> emitInOrder(const std::vector<Bundle>& bundles,
                                       const std::vector<std::size_t>& order,
                                       std::string& firstFailure) {
  CutSequence seq;
  for (const std::size_t bi : order) {
    for (const BundleCut& bc : bundles[bi].cuts) {
      try {
        seq.cuts.push_back(extendToGuillotine(bc.line, bc.target, seq));
      } catch (const TargetBlocked& e) {
        if (firstFailure.empty())
          firstFailure = cutLabel(bc) + ": " + e.what();
        return std::nullopt;
      }
    }
  }
  return seq;
}

}  // namespace

CutSequence coverToGuillotine(const ReductionInstance& instance,
                              const SegmentCover& cover) {
  const std::vector<Bundle> bundles = splitIntoBundles(instance, cover);

  // Right-to-left pass. After a bundle is cut, every still-uncovered point
  // has to sit strictly on one side of each of its supporting lines; the
  // later cuts then stay inside that half-plane arrangement and cannot be
  // clipped short of their segments.
  std::string failure;
  CutSequence seq;
  std::vector<bool> covered(instance.points.size(), false);
  bool primaryOk = true;
  for (const Bundle& b : bundles) {
    for (const BundleCut& bc : b.cuts) {
      try {
        const Segment cut = extendToGuillotine(bc.line, bc.target, seq);
        seq.cuts.push_back(cut);
        for (std::size_t i = 0; i < instance.points.size(); ++i) {
          if (!covered[i] && onSegment(instance.points[i].p, cut))
            covered[i] = true;
        }
      } catch (const TargetBlocked& e) {
        failure = cutLabel(bc) + ": " + e.what();
        primaryOk = false;
        break;
      }
    }
    if (!primaryOk) break;
    for (const BundleCut& bc : b.cuts) {
      int side = 0;
      for (std::size_t i = 0; i < instance.points.size() && side != 2; ++i) {
        if (covered[i]) continue;
        const Point& p = instance.points[i].p;
        const int s =
            sign(Rat(bc.line.a) * p.x + Rat(bc.line.b) * p.y + Rat(bc.line.c));
        if (s == 0 || (side != 0 && s != side))
          side = 2;  // uncovered points straddle the cut line
        else
          side = s;
      }
      if (side == 2) {
        failure = cutLabel(bc) + ": uncovered points on both sides";
        primaryOk = false;
        break;
      }
    }
    if (!primaryOk) break;
  }
  if (primaryOk) return seq;

  if (bundles.size() <= 6) {
    std::vector<std::size_t> order(bundles.size());
    std::iota(order.begin(), order.end(), 0);
    do {
      if (auto cuts = emitInOrder(bundles, order, failure)) return *cuts;
    } while (std::next_permutation(order.begin(), order.end()));
  }
  throw OrderingFailure("no bundle order yields guillotine cuts (" + failure +
                        ")");
}

}  // namespace coverlab
