#include "coverlab/cover.hpp"

#include <algorithm>
#include <utility>

namespace coverlab {
namespace {

struct ParamBounds {
  std::optional<Rat> lo;  // empty means -infinity
  std::optional<Rat> hi;  // empty means +infinity
};

ParamBounds paramBounds(const Line& line, const Segment& s) {
  const Rat pa = lineParameter(line, s.a);
  const Rat pb = lineParameter(line, s.b);
  ParamBounds b;
  if (pa <= pb) {
    if (!s.unboundedA) b.lo = pa;
    if (!s.unboundedB) b.hi = pb;
  } else {
    if (!s.unboundedB) b.lo = pb;
    if (!s.unboundedA) b.hi = pa;
  }
  return b;
}

std::optional<Point> smallestUncovered(const std::vector<Point>& points,
                                       const std::vector<Segment>& pieces) {
  std::optional<Point> found;
  for (const Point& p : points) {
    bool covered = false;
    for (const Segment& s : pieces) {
      if (onSegment(p, s)) {
        covered = true;
        break;
      }
    }
    if (!covered && (!found || lexLess(p, *found))) found = p;
  }
  return found;
}

// Some point shared by two non-disjoint bounded segments, for diagnostics.
std::optional<Point> sharedPointWitness(const Segment& s, const Segment& t) {
  if (s.degenerate()) return s.a;
  if (t.degenerate()) return t.a;
  const Line ls = s.supportingLine();
  const Line lt = t.supportingLine();
  if (ls == lt) {
    const ParamBounds bs = paramBounds(ls, s);
    const ParamBounds bt = paramBounds(ls, t);
    const Rat lo = std::max(*bs.lo, *bt.lo);
    return linePointAt(ls, lo);
  }
  return lineIntersection(ls, lt);
}

// A bounded endpoint is blocked iff extending past it would properly cross
// an earlier cut: some earlier cut on a different line holds the endpoint in
// its relative interior.
bool endpointBlocked(const Point& p, const Line& cutLine,
                     const std::vector<Segment>& cuts, size_t index) {
  for (size_t j = 0; j < index; ++j) {
    const Segment& c = cuts[j];
    if (c.degenerate()) continue;
    if (!inRelativeInterior(p, c)) continue;
    if (c.supportingLine() == cutLine) continue;
    return true;
  }
  return false;
}

}  // namespace

std::string violationCodeName(ViolationCode code) {
  switch (code) {
    case ViolationCode::None:
      return "NONE";
    case ViolationCode::UnboundedSegment:
      return "UNBOUNDED_SEGMENT";
    case ViolationCode::UncoveredPoint:
      return "UNCOVERED_POINT";
    case ViolationCode::SegmentsNotDisjoint:
      return "SEGMENTS_NOT_DISJOINT";
    case ViolationCode::BudgetExceeded:
      return "BUDGET_EXCEEDED";
    case ViolationCode::DegenerateCut:
      return "DEGENERATE_CUT";
    case ViolationCode::ProperIntersectionWithEarlier:
      return "PROPER_INTERSECTION_WITH_EARLIER";
    case ViolationCode::CutNotMaximal:
      return "CUT_NOT_MAXIMAL";
  }
  return "UNKNOWN";
}

Verdict Verdict::accept() {
  Verdict v;
  v.accepted = true;
  return v;
}

Verdict Verdict::reject(ViolationCode code, int indexA, int indexB,
                        std::optional<Point> where, std::string detail) {
  Verdict v;
  v.accepted = false;
  v.code = code;
  v.indexA = indexA;
  v.indexB = indexB;
  v.where = std::move(where);
  v.detail = std::move(detail);
  return v;
}

Verdict verifySegmentCover(const std::vector<Point>& points,
                           const SegmentCover& cover, int budget) {
  const auto& segs = cover.segments;
  for (size_t i = 0; i < segs.size(); ++i) {
    if (!segs[i].boundedBoth())
      return Verdict::reject(ViolationCode::UnboundedSegment,
                             static_cast<int>(i), -1, std::nullopt,
                             "cover segments must be bounded");
  }
  if (const auto p = smallestUncovered(points, segs))
    return Verdict::reject(ViolationCode::UncoveredPoint, -1, -1, *p,
                           "point " + pointToString(*p) +
                               " lies on no cover segment");
  for (size_t i = 0; i < segs.size(); ++i) {
    for (size_t j = i + 1; j < segs.size(); ++j) {
      if (!segmentsDisjoint(segs[i], segs[j]))
        return Verdict::reject(ViolationCode::SegmentsNotDisjoint,
                               static_cast<int>(i), static_cast<int>(j),
                               sharedPointWitness(segs[i], segs[j]),
                               "segments share a point");
    }
  }
  if (static_cast<int>(segs.size()) > budget)
    return Verdict::reject(ViolationCode::BudgetExceeded, -1, -1, std::nullopt,
                           "cover uses " + std::to_string(segs.size()) +
                               " segments, budget is " +
                               std::to_string(budget));
  return Verdict::accept();
}

Verdict verifyGuillotineSequence(const std::vector<Point>& points,
                                 const CutSequence& seq, int budget) {
  const auto& cuts = seq.cuts;
  for (size_t i = 0; i < cuts.size(); ++i) {
    if (cuts[i].degenerate())
      return Verdict::reject(ViolationCode::DegenerateCut, static_cast<int>(i),
                             -1, cuts[i].a, "cuts must have positive length");
  }
  for (size_t i = 0; i < cuts.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (properIntersection(cuts[i], cuts[j])) {
        std::optional<Point> where;
        const Line li = cuts[i].supportingLine();
        const Line lj = cuts[j].supportingLine();
        if (!(li == lj)) where = lineIntersection(li, lj);
        return Verdict::reject(
            ViolationCode::ProperIntersectionWithEarlier, static_cast<int>(i),
            static_cast<int>(j), where,
            "cut " + std::to_string(i) + " properly intersects cut " +
                std::to_string(j));
      }
    }
  }
  for (size_t i = 0; i < cuts.size(); ++i) {
    const Line line = cuts[i].supportingLine();
    for (const bool endB : {false, true}) {
      if (endB ? cuts[i].unboundedB : cuts[i].unboundedA) continue;
      const Point& p = endB ? cuts[i].b : cuts[i].a;
      if (!endpointBlocked(p, line, cuts, i))
        return Verdict::reject(ViolationCode::CutNotMaximal,
                               static_cast<int>(i), -1, p,
                               "endpoint " + pointToString(p) +
                                   " is not blocked by any earlier cut");
    }
  }
  if (const auto p = smallestUncovered(points, cuts))
    return Verdict::reject(ViolationCode::UncoveredPoint, -1, -1, *p,
                           "point " + pointToString(*p) + " lies on no cut");
  if (static_cast<int>(cuts.size()) > budget)
    return Verdict::reject(ViolationCode::BudgetExceeded, -1, -1, std::nullopt,
                           "sequence uses " + std::to_string(cuts.size()) +
                               " cuts, budget is " + std::to_string(budget));
  return Verdict::accept();
}

Segment extendToGuillotine(const Line& line, const Segment& target,
                           const CutSequence& previous) {
  const bool onLine = target.degenerate() ? line.contains(target.a)
                                          : target.supportingLine() == line;
  if (!onLine)
    throw std::invalid_argument("extension target does not lie on the line");
  for (size_t j = 0; j < previous.cuts.size(); ++j) {
    if (properIntersection(target, previous.cuts[j]))
      throw TargetBlocked("previous cut " + std::to_string(j) +
                          " properly crosses the extension target");
  }

  const ParamBounds tb = paramBounds(line, target);
  std::optional<Rat> lo;
  std::optional<Rat> hi;
  auto raiseLo = [&lo](const Rat& v) {
    if (!lo || v > *lo) lo = v;
  };
  auto lowerHi = [&hi](const Rat& v) {
    if (!hi || v < *hi) hi = v;
  };

  for (const Segment& c : previous.cuts) {
    if (c.degenerate()) continue;
    const Line lc = c.supportingLine();
    if (lc == line) {
      // A collinear cut cannot be crossed or overlapped; the extension stops
      // where it begins.
      const ParamBounds cb = paramBounds(line, c);
      if (cb.lo && tb.hi && *cb.lo >= *tb.hi)
        lowerHi(*cb.lo);
      else if (cb.hi && tb.lo && *cb.hi <= *tb.lo)
        raiseLo(*cb.hi);
      else
        throw TargetBlocked("collinear previous cut overlaps the target");
      continue;
    }
    const auto q = lineIntersection(line, lc);
    if (!q) continue;
    if (!inRelativeInterior(*q, c)) continue;
    const Rat u = lineParameter(line, *q);
    if (tb.lo && u <= *tb.lo)
      raiseLo(u);
    else if (tb.hi && u >= *tb.hi)
      lowerHi(u);
    else
      throw TargetBlocked("previous cut crosses inside the target");
  }

  if (!lo && !hi)
    return Segment::fullLine(linePointAt(line, Rat(0)),
                             linePointAt(line, Rat(1)));
  if (lo && hi) {
    if (*lo == *hi)
      throw TargetBlocked("extension collapses to a single point");
    return Segment::bounded(linePointAt(line, *lo), linePointAt(line, *hi));
  }
  if (lo) return Segment::ray(linePointAt(line, *lo),
                              linePointAt(line, *lo + 1));
  return Segment::ray(linePointAt(line, *hi), linePointAt(line, *hi - 1));
}

SegmentCover shortenCuts(const std::vector<Point>& points,
                         const CutSequence& seq) {
  const auto& cuts = seq.cuts;
  std::vector<std::vector<Point>> assigned(cuts.size());
  for (const Point& p : points) {
    bool placed = false;
    for (size_t i = 0; i < cuts.size(); ++i) {
      if (onSegment(p, cuts[i])) {
        assigned[i].push_back(p);
        placed = true;
        break;
      }
    }
    if (!placed)
      throw std::invalid_argument("point " + pointToString(p) +
                                  " lies on no cut");
  }

  auto trim = [&cuts](size_t i,
                      const std::vector<Point>& pts) -> std::optional<Segment> {
    if (pts.empty()) return std::nullopt;
    if (cuts[i].degenerate()) return Segment::point(cuts[i].a);
    const Line line = cuts[i].supportingLine();
    Rat lo = lineParameter(line, pts.front());
    Rat hi = lo;
    for (const Point& p : pts) {
      const Rat t = lineParameter(line, p);
      if (t < lo) lo = t;
      if (t > hi) hi = t;
    }
    if (lo == hi) return Segment::point(linePointAt(line, lo));
    return Segment::bounded(linePointAt(line, lo), linePointAt(line, hi));
  };

  std::vector<std::pair<size_t, Segment>> trimmed;
  for (size_t i = 0; i < cuts.size(); ++i) {
    if (auto s = trim(i, assigned[i])) trimmed.emplace_back(i, *s);
  }

  // A verified sequence cannot produce touching trims, but reassign shared
  // points to the earlier cut if it ever happens.
  for (size_t guard = 0; guard <= points.size(); ++guard) {
    bool collision = false;
    for (size_t a = 0; a < trimmed.size() && !collision; ++a) {
      for (size_t b = a + 1; b < trimmed.size() && !collision; ++b) {
        if (segmentsDisjoint(trimmed[a].second, trimmed[b].second)) continue;
        collision = true;
        const size_t earlier = trimmed[a].first;
        const size_t later = trimmed[b].first;
        auto& latePts = assigned[later];
        auto moved = std::find_if(
            latePts.begin(), latePts.end(), [&](const Point& p) {
              return onSegment(p, trimmed[a].second);
            });
        if (moved == latePts.end())
          throw std::logic_error("cut shortening cannot separate segments");
        assigned[earlier].push_back(*moved);
        latePts.erase(moved);
        if (auto s = trim(earlier, assigned[earlier]))
          trimmed[a].second = *s;
        if (auto s = trim(later, latePts)) {
          trimmed[b].second = *s;
        } else {
          trimmed.erase(trimmed.begin() + static_cast<std::ptrdiff_t>(b));
        }
      }
    }
    if (!collision) break;
    if (guard == points.size())
      throw std::logic_error("cut shortening did not converge");
  }

  SegmentCover cover;
  for (auto& [index, segment] : trimmed) cover.segments.push_back(segment);
  return cover;
}

}  // namespace coverlab
