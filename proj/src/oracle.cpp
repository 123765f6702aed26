#include "coverlab/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "coverlab/witness.hpp"

namespace coverlab {

namespace {

// Point-index sets for up to 256 points, enough for the 200-point cap.
struct Mask {
  std::array<std::uint64_t, 4> w{};

  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  bool intersects(const Mask& o) const {
    for (int i = 0; i < 4; ++i)
      if (w[i] & o.w[i]) return true;
    return false;
  }
  bool operator==(const Mask& o) const { return w == o.w; }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
};

Mask andNot(const Mask& a, const Mask& b) {
  Mask r;
  for (int i = 0; i < 4; ++i) r.w[i] = a.w[i] & ~b.w[i];
  return r;
}

void orInto(Mask& a, const Mask& b) {
  for (int i = 0; i < 4; ++i) a.w[i] |= b.w[i];
}

bool lineLess(const Line& a, const Line& b) {
  if (int c = cmp(a.a, b.a)) return c < 0;
  if (int c = cmp(a.b, b.b)) return c < 0;
  return cmp(a.c, b.c) < 0;
}

struct LineGroup {
  Line line;
  std::vector<int> pts;  // sorted along the line
};

// Every line through at least two of the points, each with its full point
// membership ordered along the line.
std::vector<LineGroup> collectLines(const std::vector<Point>& points) {
  std::vector<LineGroup> groups;
  std::unordered_map<std::size_t, std::vector<int>> buckets;
  const int n = static_cast<int>(points.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (points[i] == points[j]) continue;
      const Line l = Line::throughPoints(points[i], points[j]);
      auto& bucket = buckets[hashLine(l)];
      bool known = false;
      for (int gi : bucket)
        if (groups[gi].line == l) {
          known = true;
          break;
        }
      if (known) continue;
      LineGroup g;
      g.line = l;
      for (int p = 0; p < n; ++p)
        if (l.contains(points[p])) g.pts.push_back(p);
      std::sort(g.pts.begin(), g.pts.end(), [&](int a, int b) {
        return lineParameter(l, points[a]) < lineParameter(l, points[b]);
      });
      bucket.push_back(static_cast<int>(groups.size()));
      groups.push_back(std::move(g));
    }
  std::sort(groups.begin(), groups.end(),
            [](const LineGroup& a, const LineGroup& b) {
              return lineLess(a.line, b.line);
            });
  return groups;
}

struct Candidate {
  Segment hull;
  Mask covers;
  std::vector<int> pts;
};

// Catalogue order: lines by coefficient triple, runs within a line by start
// ascending then end descending, single-point segments last in point order.
std::vector<Candidate> buildCandidates(const std::vector<Point>& points,
                                       const std::vector<LineGroup>& groups) {
  std::vector<Candidate> cands;
  for (const LineGroup& g : groups) {
    const int t = static_cast<int>(g.pts.size());
    for (int s = 0; s < t; ++s)
      for (int e = t - 1; e > s; --e) {
        Candidate c;
        c.hull = Segment::bounded(points[g.pts[s]], points[g.pts[e]]);
        for (int i = s; i <= e; ++i) {
          c.covers.set(g.pts[i]);
          c.pts.push_back(g.pts[i]);
        }
        cands.push_back(std::move(c));
      }
  }
  for (int p = 0; p < static_cast<int>(points.size()); ++p) {
    Candidate c;
    c.hull = Segment::point(points[p]);
    c.covers.set(p);
    c.pts.push_back(p);
    cands.push_back(std::move(c));
  }
  return cands;
}

struct SegmentSearch {
  const std::vector<Point>& points;
  std::vector<Candidate> cands;
  std::vector<std::vector<int>> perPoint;
  int n;
  Mask covered;
  std::vector<int> chosen;
  std::int64_t nodes = 0;
  std::unordered_map<std::uint64_t, bool> disjointCache;

  explicit SegmentSearch(const std::vector<Point>& pts) : points(pts) {
    n = static_cast<int>(points.size());
    cands = buildCandidates(points, collectLines(points));
    perPoint.resize(n);
    for (int ci = 0; ci < static_cast<int>(cands.size()); ++ci)
      for (int p : cands[ci].pts) perPoint[p].push_back(ci);
  }

  bool hullsDisjoint(int a, int b) {
    if (a > b) std::swap(a, b);
    const std::uint64_t key =
        (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    auto it = disjointCache.find(key);
    if (it != disjointCache.end()) return it->second;
    const bool d = segmentsDisjoint(cands[a].hull, cands[b].hull);
    disjointCache.emplace(key, d);
    return d;
  }

  bool usable(int ci) {
    if (cands[ci].covers.intersects(covered)) return false;
    for (int prev : chosen)
      if (!hullsDisjoint(prev, ci)) return false;
    return true;
  }

  // Each segment covering an uncovered point p covers at most c_p uncovered
  // points (the best candidate through p), so a fractional charge of 1/c_p
  // per point is a lower bound on the segments still needed.
  int lowerBound() {
    std::array<int, 257> best{};
    for (const Candidate& c : cands) {
      if (c.covers.intersects(covered)) continue;
      const int cnt = static_cast<int>(c.pts.size());
      for (int p : c.pts)
        if (cnt > best[p]) best[p] = cnt;
    }
    std::array<int, 257> tally{};
    for (int p = 0; p < n; ++p)
      if (!covered.test(p)) ++tally[best[p]];
    Rat sum(0);
    for (int c = 1; c <= 256; ++c)
      if (tally[c]) sum += makeRat(tally[c], c);
    Int num = sum.get_num();
    Int den = sum.get_den();
    Int q, r;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return static_cast<int>(q.get_si());
  }

  int pickPoint(bool canonical) {
    int bestP = -1;
    std::size_t bestCount = 0;
    for (int p = 0; p < n; ++p) {
      if (covered.test(p)) continue;
      if (canonical) return p;
      std::size_t count = 0;
      for (int ci : perPoint[p])
        if (!cands[ci].covers.intersects(covered)) ++count;
      if (bestP < 0 || count < bestCount) {
        bestP = p;
        bestCount = count;
      }
    }
    return bestP;
  }

  bool dfs(int cap, bool canonical) {
    ++nodes;
    const int p = pickPoint(canonical);
    if (p < 0) return true;
    if (static_cast<int>(chosen.size()) >= cap) return false;
    if (static_cast<int>(chosen.size()) + lowerBound() > cap) return false;
    for (int ci : perPoint[p]) {
      if (!usable(ci)) continue;
      const Mask saved = covered;
      orInto(covered, cands[ci].covers);
      chosen.push_back(ci);
      if (dfs(cap, canonical)) return true;
      chosen.pop_back();
      covered = saved;
    }
    return false;
  }
};

struct GuillotineSearch {
  const std::vector<Point>& points;
  int limit;
  std::vector<Line> lines;        // static family, catalogue order
  std::vector<Mask> lineCovers;   // per static line
  std::unordered_set<std::size_t> lineHashes;
  CutSequence seq;
  std::vector<Line> cutLines;
  Mask covered;
  std::int64_t nodes = 0;
  std::optional<CutSequence> found;

  GuillotineSearch(const std::vector<Point>& pts, int lim)
      : points(pts), limit(lim) {
    const int n = static_cast<int>(points.size());
    std::vector<Line> all;
    for (const LineGroup& g : collectLines(points)) all.push_back(g.line);
    static const int dirs[8][2] = {{1, 0},  {0, 1},  {1, 1},  {1, -1},
                                   {2, 1},  {1, 2},  {2, -1}, {1, -2}};
    for (int p = 0; p < n; ++p)
      for (const auto& d : dirs) {
        const Rat a(d[1]), b(-d[0]);
        const Rat c = -(a * points[p].x + b * points[p].y);
        all.push_back(Line::fromCoefficients(a, b, c));
      }
    std::sort(all.begin(), all.end(), lineLess);
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (const Line& l : all) {
      Mask m;
      for (int p = 0; p < n; ++p)
        if (l.contains(points[p])) m.set(p);
      lines.push_back(l);
      lineCovers.push_back(m);
      lineHashes.insert(hashLine(l));
    }
  }

  // A line already carrying a cut admits no further maximal piece: any piece
  // either overlaps the cut (proper intersection) or stops at one of its
  // endpoints, where nothing blocks extension on a different line.
  bool lineUsed(const Line& l) const {
    for (const Line& c : cutLines)
      if (c == l) return true;
    return false;
  }

  std::vector<Segment> maximalPieces(const Line& l) const {
    std::vector<Rat> blockers;
    for (std::size_t i = 0; i < seq.cuts.size(); ++i) {
      const auto ix = lineIntersection(l, cutLines[i]);
      if (ix && inRelativeInterior(*ix, seq.cuts[i]))
        blockers.push_back(lineParameter(l, *ix));
    }
    std::sort(blockers.begin(), blockers.end());
    blockers.erase(std::unique(blockers.begin(), blockers.end()),
                   blockers.end());
    std::vector<Segment> pieces;
    if (blockers.empty()) {
      pieces.push_back(Segment::fullLine(linePointAt(l, Rat(0)),
                                         linePointAt(l, Rat(1))));
      return pieces;
    }
    pieces.push_back(Segment::ray(linePointAt(l, blockers.front()),
                                  linePointAt(l, blockers.front() - 1)));
    for (std::size_t i = 0; i + 1 < blockers.size(); ++i)
      pieces.push_back(Segment::bounded(linePointAt(l, blockers[i]),
                                        linePointAt(l, blockers[i + 1])));
    pieces.push_back(Segment::ray(linePointAt(l, blockers.back()),
                                  linePointAt(l, blockers.back() + 1)));
    return pieces;
  }

  std::vector<Line> dynamicLines() const {
    std::vector<Point> crossings;
    for (std::size_t i = 0; i < seq.cuts.size(); ++i)
      for (std::size_t j = i + 1; j < seq.cuts.size(); ++j) {
        const auto ix = lineIntersection(cutLines[i], cutLines[j]);
        if (ix && onSegment(*ix, seq.cuts[i]) && onSegment(*ix, seq.cuts[j]))
          crossings.push_back(*ix);
      }
    std::vector<Line> extra;
    for (std::size_t i = 0; i < crossings.size(); ++i)
      for (std::size_t j = i + 1; j < crossings.size(); ++j) {
        if (crossings[i] == crossings[j]) continue;
        const Line l = Line::throughPoints(crossings[i], crossings[j]);
        if (lineHashes.count(hashLine(l))) continue;
        extra.push_back(l);
      }
    std::sort(extra.begin(), extra.end(), lineLess);
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    return extra;
  }

  int maxUncoveredOnALine() const {
    int best = 1;
    for (const Mask& m : lineCovers)
      best = std::max(best, andNot(m, covered).count());
    return best;
  }

  Mask pointsOnPiece(const Segment& piece) const {
    Mask m;
    for (int p = 0; p < static_cast<int>(points.size()); ++p)
      if (onSegment(points[p], piece)) m.set(p);
    return m;
  }

  bool tryCut(const Line& l, const Segment& piece) {
    const Mask saved = covered;
    orInto(covered, pointsOnPiece(piece));
    seq.cuts.push_back(piece);
    cutLines.push_back(l);
    const bool done = dfs();
    seq.cuts.pop_back();
    cutLines.pop_back();
    covered = saved;
    return done;
  }

  // Candidate order at each node: static lines then dynamic ones, within
  // each class by fresh coverage descending then coefficient triple, and a
  // line's maximal pieces left to right. First sequence found wins.
  bool dfs() {
    ++nodes;
    const int uncoveredCount =
        static_cast<int>(points.size()) - covered.count();
    if (uncoveredCount == 0) {
      found = seq;
      return true;
    }
    const int remaining = limit - static_cast<int>(seq.cuts.size());
    if (remaining <= 0) return false;
    if (uncoveredCount > remaining * maxUncoveredOnALine()) return false;

    std::vector<std::pair<int, const Line*>> order;
    for (std::size_t li = 0; li < lines.size(); ++li) {
      if (lineUsed(lines[li])) continue;
      order.emplace_back(andNot(lineCovers[li], covered).count(), &lines[li]);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [cover, line] : order)
      for (const Segment& piece : maximalPieces(*line))
        if (tryCut(*line, piece)) return true;
    const std::vector<Line> extra = dynamicLines();
    for (const Line& l : extra) {
      if (lineUsed(l)) continue;
      for (const Segment& piece : maximalPieces(l))
        if (tryCut(l, piece)) return true;
    }
    return false;
  }
};

}  // namespace

SegmentSearchResult minSegmentCover(const std::vector<Point>& points,
                                    int limit, const OracleCaps& caps) {
  if (static_cast<int>(points.size()) > caps.maxSegmentPoints ||
      points.size() > 256)
    throw CapExceeded("point count " + std::to_string(points.size()) +
                      " exceeds the segment-cover cap " +
                      std::to_string(caps.maxSegmentPoints));
  SegmentSearchResult result;
  if (points.empty()) {
    result.cover = SegmentCover{};
    return result;
  }
  if (limit <= 0) return result;

  SegmentSearch search(points);
  const int lb = search.lowerBound();
  for (int k = std::max(lb, 1); k <= limit; ++k) {
    search.covered = Mask{};
    search.chosen.clear();
    if (!search.dfs(k, false)) continue;
    // minimum size k established; re-search for the canonical witness
    search.covered = Mask{};
    search.chosen.clear();
    const bool again = search.dfs(k, true);
    if (!again)
      throw OracleInconsistency(
          "canonical re-search lost a cover the sizing search found");
    SegmentCover cover;
    for (int ci : search.chosen) cover.segments.push_back(search.cands[ci].hull);
    const Verdict verdict = verifySegmentCover(points, cover, limit);
    if (!verdict.accepted)
      throw OracleInconsistency("oracle cover failed verification: " +
                                verdict.detail);
    result.cover = std::move(cover);
    break;
  }
  result.nodesExplored = search.nodes;
  return result;
}

GuillotineSearchResult boundedGuillotineSearch(const std::vector<Point>& points,
                                               int limit,
                                               const OracleCaps& caps) {
  if (static_cast<int>(points.size()) > caps.maxGuillotinePoints)
    throw CapExceeded("point count " + std::to_string(points.size()) +
                      " exceeds the guillotine cap " +
                      std::to_string(caps.maxGuillotinePoints));
  if (limit > caps.maxGuillotineCuts)
    throw CapExceeded("cut limit " + std::to_string(limit) +
                      " exceeds the guillotine cap " +
                      std::to_string(caps.maxGuillotineCuts));
  GuillotineSearchResult result;
  if (points.empty()) {
    result.cuts = CutSequence{};
    return result;
  }
  if (limit <= 0) return result;

  GuillotineSearch search(points, limit);
  search.dfs();
  if (search.found) {
    const Verdict verdict =
        verifyGuillotineSequence(points, *search.found, limit);
    if (!verdict.accepted)
      throw OracleInconsistency("oracle cut sequence failed verification: " +
                                verdict.detail);
    result.cuts = std::move(search.found);
  }
  result.nodesExplored = search.nodes;
  return result;
}

EquivalenceReport certifyReduction(const MonotoneFormula& formula,
                                   const OracleCaps& caps) {
  EquivalenceReport report;
  report.formula = validate(formula);
  const ReductionInstance inst = buildInstance(report.formula);
  report.budget = inst.budget;
  const std::vector<Point> pts = inst.plainPoints();
  const auto model = satSolve(report.formula);
  if (model) {
    report.satisfiable = true;
    report.model = model;
    const SegmentCover cover = assignmentToCover(inst, *model);
    const Verdict verdict = verifySegmentCover(pts, cover, inst.budget);
    if (!verdict.accepted)
      throw OracleInconsistency("witness cover failed verification: " +
                                verdict.detail);
    report.cover = cover;
    if (static_cast<int>(pts.size()) <= caps.maxCertifySearchPoints) {
      const SegmentSearchResult res = minSegmentCover(pts, inst.budget, caps);
      report.oracleSearched = true;
      report.nodesExplored = res.nodesExplored;
      if (!res.cover)
        throw OracleInconsistency(
            "formula is satisfiable but the oracle found no cover within "
            "budget " +
            std::to_string(inst.budget));
    }
  } else {
    const SegmentSearchResult res = minSegmentCover(pts, inst.budget, caps);
    report.oracleSearched = true;
    report.nodesExplored = res.nodesExplored;
    if (res.cover)
      throw OracleInconsistency(
          "formula is unsatisfiable but the oracle found a cover within "
          "budget " +
          std::to_string(inst.budget));
  }
  return report;
}

}  // namespace coverlab
