#include "coverlab/reduction.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace coverlab {
namespace {

struct LineHash {
  std::size_t operator()(const Line& l) const { return hashLine(l); }
};

Line lineWithSlope(const Point& through, const Rat& slope) {
  // y = through.y + slope * (x - through.x)
  return Line::fromCoefficients(slope, Rat(-1), through.y - slope * through.x);
}

std::string lineLabel(bool pos, int lineIndex, int variable, bool clauseEdge,
                      int clauseIndex) {
  std::string s = pos ? "pos" : "neg";
  s += " line " + std::to_string(lineIndex) + " of variable " +
       std::to_string(variable);
  if (clauseEdge) s += " (edge of clause " + std::to_string(clauseIndex) + ")";
  return s;
}

}  // namespace

Rat defaultEpsilon(int m) { return makeRat(1, static_cast<long>(m) * m); }

Rat defaultDelta(int n, int m) {
  return makeRat(1, 16L * m * m * n);
}

DrawingSkeleton phase1(const MonotoneFormula& formula, const Rat& epsilon) {
  if (!formula.validated)
    throw std::invalid_argument("phase1 requires a validated formula");
  if (sign(epsilon) <= 0)
    throw std::invalid_argument("epsilon must be positive");
  const int n = formula.n();
  const int m = formula.m();
  if (m == 0) throw std::invalid_argument("formula has no clauses");

  DrawingSkeleton sk;
  sk.formula = formula;
  sk.epsilon = epsilon;
  for (int v = 1; v <= n; ++v)
    sk.variablePoints.push_back(Point{Rat(v), Rat(0)});

  // largest span per (side, nesting level); the key order also gives
  // ascending levels per side for the monotonicity check below
  std::map<std::pair<bool, int>, long> maxSpan;
  for (const Clause& c : formula.clauses) {
    const long span = c.spanHi() - c.spanLo();
    const auto key = std::make_pair(c.sign == Sign::Pos, c.level);
    auto [it, fresh] = maxSpan.emplace(key, span);
    if (!fresh && span > it->second) it->second = span;
  }

  std::map<std::pair<bool, int>, Rat> levelY;
  for (const auto& [key, span] : maxSpan) {
    Rat y = Rat(span) - epsilon * key.second;
    if (sign(y) <= 0)
      throw EpsilonTooLarge("level " + std::to_string(key.second) +
                            " offset consumes the whole span");
    levelY.emplace(key, std::move(y));
  }
  for (const bool posSide : {false, true}) {
    const Rat* prev = nullptr;
    for (const auto& [key, y] : levelY) {
      if (key.first != posSide) continue;
      if (prev && *prev <= y)
        throw EpsilonTooLarge("deeper nesting level fails to move closer "
                              "to the axis");
      prev = &y;
    }
  }

  for (std::size_t ci = 0; ci < formula.clauses.size(); ++ci) {
    const Clause& c = formula.clauses[ci];
    const Rat x = makeRat(c.spanLo() + c.spanHi(), 2);
    const Rat& y = levelY.at({c.sign == Sign::Pos, c.level});
    sk.clausePoints.push_back(
        Point{x, c.sign == Sign::Pos ? y : Rat(-y)});
  }

  for (std::size_t ci = 0; ci < formula.clauses.size(); ++ci) {
    const Point& cp = sk.clausePoints[ci];
    for (const int v : formula.clauses[ci].vars) {
      const Point vp{Rat(v), Rat(0)};
      const Rat dx = cp.x - vp.x;
      // the shear step needs |slope| > 4/5 on every edge; vertical passes
      if (sign(dx) != 0 && abs(cp.y) * 5 <= abs(dx) * 4)
        throw EpsilonTooLarge(
            "edge from clause " + std::to_string(ci) + " to variable " +
            std::to_string(v) + " is shallower than the shear margin");
      sk.edges.push_back(
          {static_cast<int>(ci), v, Segment::bounded(cp, vp)});
    }
  }

  for (std::size_t i = 0; i < sk.edges.size(); ++i) {
    for (std::size_t j = i + 1; j < sk.edges.size(); ++j) {
      if (properIntersection(sk.edges[i].seg, sk.edges[j].seg))
        throw EpsilonTooLarge(
            "drawing edges of clauses " +
            std::to_string(sk.edges[i].clauseIndex) + " and " +
            std::to_string(sk.edges[j].clauseIndex) + " cross");
    }
  }
  return sk;
}

DrawingSkeleton phase2(const DrawingSkeleton& skeleton) {
  if (skeleton.sheared)
    throw std::invalid_argument("skeleton is already sheared");
  DrawingSkeleton out = skeleton;
  out.sheared = true;
  const Rat top = makeRat(-5, 4);
  const Rat bottom = makeRat(5, 4);
  for (Point& p : out.clausePoints) {
    const int s = sign(p.y);
    if (s > 0)
      p = shear(p, top);
    else if (s < 0)
      p = shear(p, bottom);
  }
  for (SkeletonEdge& e : out.edges) {
    const Point& cp = out.clausePoints[static_cast<std::size_t>(e.clauseIndex)];
    e.seg = Segment::bounded(cp, Point{Rat(e.variable), Rat(0)});
  }

  // every sheared edge must lean left: top edges get negative slope,
  // bottom edges positive slope, both equivalent to dx < 0
  for (const SkeletonEdge& e : out.edges) {
    const Point& cp = out.clausePoints[static_cast<std::size_t>(e.clauseIndex)];
    if (sign(cp.x - e.variable) >= 0)
      throw SlopeSignViolation("sheared edge of clause " +
                               std::to_string(e.clauseIndex) +
                               " does not lean left");
  }
  for (std::size_t i = 0; i < out.edges.size(); ++i) {
    for (std::size_t j = i + 1; j < out.edges.size(); ++j) {
      if (properIntersection(out.edges[i].seg, out.edges[j].seg))
        throw SlopeSignViolation("shear broke edge disjointness");
    }
  }
  return out;
}

std::string TaggedPoint::tag() const {
  if (isClausePoint) return "clause:" + std::to_string(clauseIndex);
  return "gadget:" + std::to_string(variable) + ":" +
         std::to_string(posIndex) + ":" + std::to_string(negIndex);
}

std::size_t ReductionInstance::clausePointIndex(int clauseIndex) const {
  return static_cast<std::size_t>(clauseIndex);
}

std::size_t ReductionInstance::gadgetPointIndex(int variable, int posIndex,
                                                int negIndex) const {
  const std::size_t m = formula.clauses.size();
  return m + (static_cast<std::size_t>(variable) - 1) * m * m +
         static_cast<std::size_t>(posIndex) * m +
         static_cast<std::size_t>(negIndex);
}

std::vector<Point> ReductionInstance::plainPoints() const {
  std::vector<Point> out;
  out.reserve(points.size());
  for (const TaggedPoint& tp : points) out.push_back(tp.p);
  return out;
}

std::string AuditReport::summary() const {
  if (violations.empty()) return "clean";
  const AuditViolation& first = violations.front();
  return std::to_string(violations.size()) + " violation(s); first: (" +
         std::string(1, first.clause) + ") " + first.detail;
}

AuditFailure::AuditFailure(AuditReport r)
    : ReductionError("audit failed: " + r.summary()), report(std::move(r)) {}

ConstructionExhausted::ConstructionExhausted(std::vector<std::string> log)
    : ReductionError("construction retries exhausted after " +
                     std::to_string(log.size()) + " attempts" +
                     (log.empty() ? "" : "; last: " + log.back())),
      attempts(std::move(log)) {}

ReductionInstance buildGadgets(const DrawingSkeleton& skeleton,
                               const Rat& delta) {
  if (!skeleton.sheared)
    throw std::invalid_argument("buildGadgets needs a sheared skeleton");
  if (sign(delta) <= 0) throw std::invalid_argument("delta must be positive");
  const int n = skeleton.formula.n();
  const int m = skeleton.formula.m();
  const Rat gamma = delta / 2;

  ReductionInstance inst;
  inst.formula = skeleton.formula;
  inst.epsilon = skeleton.epsilon;
  inst.delta = delta;
  inst.budget = n * m;

  for (int c = 0; c < m; ++c) {
    TaggedPoint tp;
    tp.p = skeleton.clausePoints[static_cast<std::size_t>(c)];
    tp.isClausePoint = true;
    tp.clauseIndex = c;
    inst.points.push_back(std::move(tp));
  }

  for (int v = 1; v <= n; ++v) {
    VariableGadget g;
    g.variable = v;
    g.posApex = Point{Rat(v), Rat(-delta)};
    g.negApex = Point{Rat(v) + gamma, delta};

    auto buildSide = [&](bool posSide) {
      const Point& apex = posSide ? g.posApex : g.negApex;
      std::vector<GadgetLine> lines;
      std::optional<Rat> extreme;
      for (int c = 0; c < m; ++c) {
        const Clause& cl = skeleton.formula.clauses[static_cast<std::size_t>(c)];
        if ((cl.sign == Sign::Pos) != posSide) continue;
        if (std::find(cl.vars.begin(), cl.vars.end(), v) == cl.vars.end())
          continue;
        const Point& cp = skeleton.clausePoints[static_cast<std::size_t>(c)];
        GadgetLine gl;
        gl.line = Line::throughPoints(apex, cp);
        gl.clauseEdge = true;
        gl.clauseIndex = c;
        const Rat s = gl.line.slope();
        if (posSide ? sign(s) >= 0 : sign(s) <= 0)
          throw SlopeSignViolation("re-anchored edge of clause " +
                                   std::to_string(c) +
                                   " has the wrong slope sign");
        if (!extreme || (posSide ? s < *extreme : s > *extreme)) extreme = s;
        lines.push_back(std::move(gl));
      }
      // fillers continue past the steepest clause edge so they can never
      // coincide with one; a clause-free side starts from a fixed base
      const Rat base =
          extreme ? *extreme : (posSide ? Rat(-1) : makeRat(9, 8));
      const int deficit = m - static_cast<int>(lines.size());
      for (int t = 1; t <= deficit; ++t) {
        const Rat s = posSide ? Rat(base - Rat(t) * delta)
                              : Rat(base + Rat(t) * delta);
        GadgetLine gl;
        gl.line = lineWithSlope(apex, s);
        lines.push_back(std::move(gl));
      }
      return lines;
    };
    g.posLines = buildSide(true);
    g.negLines = buildSide(false);

    g.crossings.assign(static_cast<std::size_t>(m),
                       std::vector<Point>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const auto x = lineIntersection(g.posLines[static_cast<std::size_t>(i)].line,
                                        g.negLines[static_cast<std::size_t>(j)].line);
        if (!x) throw SlopeSignViolation("parallel bundle lines");
        g.crossings[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            *x;
      }
    }

    recomputeDrawnSegments(g, skeleton.clausePoints, delta);

    inst.gadgets.push_back(std::move(g));
  }

  for (int v = 1; v <= n; ++v) {
    const VariableGadget& g = inst.gadgets[static_cast<std::size_t>(v) - 1];
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        TaggedPoint tp;
        tp.p = g.crossings[static_cast<std::size_t>(i)]
                          [static_cast<std::size_t>(j)];
        tp.variable = v;
        tp.posIndex = i;
        tp.negIndex = j;
        inst.points.push_back(std::move(tp));
      }
    }
  }

  for (int v = 1; v <= n; ++v) {
    const VariableGadget& g = inst.gadgets[static_cast<std::size_t>(v) - 1];
    for (const bool posSide : {true, false}) {
      const auto& lines = posSide ? g.posLines : g.negLines;
      for (int idx = 0; idx < m; ++idx) {
        const GadgetLine& gl = lines[static_cast<std::size_t>(idx)];
        CatalogueEntry e;
        e.line = gl.line;
        e.variable = v;
        e.pos = posSide;
        e.lineIndex = idx;
        e.clauseEdge = gl.clauseEdge;
        e.clauseIndex = gl.clauseIndex;
        for (int o = 0; o < m; ++o)
          e.expected.push_back(posSide ? inst.gadgetPointIndex(v, idx, o)
                                       : inst.gadgetPointIndex(v, o, idx));
        if (gl.clauseEdge)
          e.expected.push_back(inst.clausePointIndex(gl.clauseIndex));
        std::sort(e.expected.begin(), e.expected.end());
        inst.catalogue.push_back(std::move(e));
      }
    }
  }

  AuditReport report = audit(inst);
  if (!report.passed()) throw AuditFailure(std::move(report));
  return inst;
}

void recomputeDrawnSegments(VariableGadget& gadget,
                            const std::vector<Point>& clausePoints,
                            const Rat& delta) {
  const int m = static_cast<int>(gadget.posLines.size());
  for (const bool posSide : {true, false}) {
    const Point& apex = posSide ? gadget.posApex : gadget.negApex;
    auto& lines = posSide ? gadget.posLines : gadget.negLines;
    for (int idx = 0; idx < m; ++idx) {
      GadgetLine& gl = lines[static_cast<std::size_t>(idx)];
      if (gl.clauseEdge) {
        gl.drawn = Segment::bounded(
            apex, clausePoints[static_cast<std::size_t>(gl.clauseIndex)]);
        continue;
      }
      const Point* far = nullptr;
      Rat best(0);
      for (int o = 0; o < m; ++o) {
        const Point& x =
            posSide ? gadget.crossings[static_cast<std::size_t>(idx)]
                                      [static_cast<std::size_t>(o)]
                    : gadget.crossings[static_cast<std::size_t>(o)]
                                      [static_cast<std::size_t>(idx)];
        Rat d = abs(x.x - apex.x);
        if (!far || d > best) {
          far = &x;
          best = d;
        }
      }
      const Rat f = Rat(1) + delta;
      const Point end{apex.x + (far->x - apex.x) * f,
                      apex.y + (far->y - apex.y) * f};
      gl.drawn = Segment::bounded(apex, end);
    }
  }
}

AuditReport audit(const ReductionInstance& instance) {
  AuditReport report;
  auto add = [&report](char clause, std::string detail,
                       std::vector<Point> witness) {
    report.violations.push_back(
        AuditViolation{clause, std::move(detail), std::move(witness)});
  };
  const auto& pts = instance.points;
  const std::size_t count = pts.size();

  // coincident points would poison both collinearity scans below, so
  // report them here and keep only the first of each coincident group
  std::vector<bool> dup(count, false);
  for (std::size_t i = 0; i < count; ++i) {
    if (dup[i]) continue;
    for (std::size_t j = i + 1; j < count; ++j) {
      if (pts[i].p == pts[j].p) {
        dup[j] = true;
        add('b', "coincident instance points " + pts[i].tag() + " and " +
                     pts[j].tag(),
            {pts[i].p});
      }
    }
  }

  for (const CatalogueEntry& e : instance.catalogue) {
    std::vector<std::size_t> actual;
    for (std::size_t i = 0; i < count; ++i) {
      if (e.line.contains(pts[i].p)) actual.push_back(i);
    }
    if (actual != e.expected) {
      std::vector<Point> witness;
      std::vector<std::size_t> diff;
      std::set_symmetric_difference(actual.begin(), actual.end(),
                                    e.expected.begin(), e.expected.end(),
                                    std::back_inserter(diff));
      std::string names;
      for (const std::size_t i : diff) {
        witness.push_back(pts[i].p);
        names += (names.empty() ? "" : ", ") + pts[i].tag();
      }
      add('a',
          lineLabel(e.pos, e.lineIndex, e.variable, e.clauseEdge,
                    e.clauseIndex) +
              " has wrong incidences: " + names,
          std::move(witness));
    }
  }

  // collect every line through >= 3 points by hashing lines through pairs
  std::unordered_map<Line, std::vector<std::size_t>, LineHash> byLine;
  for (std::size_t i = 0; i < count; ++i) {
    if (dup[i]) continue;
    for (std::size_t j = i + 1; j < count; ++j) {
      if (dup[j]) continue;
      auto& bucket = byLine[Line::throughPoints(pts[i].p, pts[j].p)];
      if (std::find(bucket.begin(), bucket.end(), i) == bucket.end())
        bucket.push_back(i);
      if (std::find(bucket.begin(), bucket.end(), j) == bucket.end())
        bucket.push_back(j);
    }
  }
  std::vector<std::pair<Line, std::vector<std::size_t>>> heavy;
  for (auto& [line, members] : byLine) {
    if (members.size() < 3) continue;
    std::sort(members.begin(), members.end());
    heavy.emplace_back(line, members);
  }
  std::sort(heavy.begin(), heavy.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });

  if (count <= 500) {
    // independent exhaustive scan; both methods must find the same lines.
    // one common-denominator scaling keeps the cubic loop on plain integers
    Int scale = 1;
    for (std::size_t i = 0; i < count; ++i) {
      if (dup[i]) continue;
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(),
              pts[i].p.x.get_den().get_mpz_t());
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(),
              pts[i].p.y.get_den().get_mpz_t());
    }
    std::vector<Int> sx(count), sy(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (dup[i]) continue;
      sx[i] = pts[i].p.x.get_num() * (scale / pts[i].p.x.get_den());
      sy[i] = pts[i].p.y.get_num() * (scale / pts[i].p.y.get_den());
    }
    std::unordered_set<Line, LineHash> fromTriples;
    Int dx, dy, u, v, lhs, rhs;
    for (std::size_t i = 0; i < count; ++i) {
      if (dup[i]) continue;
      for (std::size_t j = i + 1; j < count; ++j) {
        if (dup[j]) continue;
        dx = sx[j] - sx[i];
        dy = sy[j] - sy[i];
        for (std::size_t k = j + 1; k < count; ++k) {
          if (dup[k]) continue;
          u = sy[k] - sy[i];
          v = sx[k] - sx[i];
          lhs = u * dx;
          rhs = v * dy;
          if (lhs == rhs)
            fromTriples.insert(Line::throughPoints(pts[i].p, pts[j].p));
        }
      }
    }
    bool agree = fromTriples.size() == heavy.size();
    for (const auto& [line, members] : heavy) {
      if (!fromTriples.count(line)) agree = false;
    }
    if (!agree)
      throw std::logic_error("collinearity scans disagree");
  }

  std::unordered_set<Line, LineHash> catalogued;
  for (const CatalogueEntry& e : instance.catalogue) catalogued.insert(e.line);
  for (const auto& [line, members] : heavy) {
    if (catalogued.count(line)) continue;
    std::string names;
    for (std::size_t i = 0; i < 3; ++i)
      names += (i ? ", " : "") + pts[members[i]].tag();
    add('b',
        "uncatalogued line through " + std::to_string(members.size()) +
            " points: " + names,
        {pts[members[0]].p, pts[members[1]].p, pts[members[2]].p});
  }

  struct DrawnSeg {
    int variable;
    bool pos;
    int index;
    bool clauseEdge;
    int clauseIndex;
    const Segment* seg;
  };
  std::vector<DrawnSeg> drawn;
  for (const VariableGadget& g : instance.gadgets) {
    for (const bool posSide : {true, false}) {
      const auto& lines = posSide ? g.posLines : g.negLines;
      for (std::size_t idx = 0; idx < lines.size(); ++idx) {
        drawn.push_back(DrawnSeg{g.variable, posSide, static_cast<int>(idx),
                                 lines[idx].clauseEdge, lines[idx].clauseIndex,
                                 &lines[idx].drawn});
      }
    }
  }
  for (std::size_t a = 0; a < drawn.size(); ++a) {
    for (std::size_t b = a + 1; b < drawn.size(); ++b) {
      const bool mustCross = drawn[a].variable == drawn[b].variable &&
                             drawn[a].pos != drawn[b].pos;
      const bool crosses = properIntersection(*drawn[a].seg, *drawn[b].seg);
      if (mustCross == crosses) continue;
      const std::string labelA =
          lineLabel(drawn[a].pos, drawn[a].index, drawn[a].variable,
                    drawn[a].clauseEdge, drawn[a].clauseIndex);
      const std::string labelB =
          lineLabel(drawn[b].pos, drawn[b].index, drawn[b].variable,
                    drawn[b].clauseEdge, drawn[b].clauseIndex);
      add('c',
          mustCross ? labelA + " misses " + labelB
                    : labelA + " crosses " + labelB,
          {});
    }
  }

  const Rat zone = makeRat(1, 4);
  for (const VariableGadget& g : instance.gadgets) {
    const int m = static_cast<int>(g.posLines.size());
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const Point& x = g.crossings[static_cast<std::size_t>(i)]
                                    [static_cast<std::size_t>(j)];
        const std::string name = "crossing " + std::to_string(g.variable) +
                                 ":" + std::to_string(i) + ":" +
                                 std::to_string(j);
        if (abs(x.x - g.variable) >= zone || abs(x.y) >= zone)
          add('d', name + " strays from its variable", {x});
        for (const DrawnSeg& s : drawn) {
          const bool parent =
              s.variable == g.variable &&
              ((s.pos && s.index == i) || (!s.pos && s.index == j));
          if (parent) continue;
          if (onSegment(x, *s.seg))
            add('d',
                name + " lies on " +
                    lineLabel(s.pos, s.index, s.variable, s.clauseEdge,
                              s.clauseIndex),
                {x});
        }
      }
    }
  }

  std::sort(report.violations.begin(), report.violations.end(),
            [](const AuditViolation& a, const AuditViolation& b) {
              if (a.clause != b.clause) return a.clause < b.clause;
              return a.detail < b.detail;
            });
  return report;
}

namespace {

void checkBitLengths(const ReductionInstance& instance, int n, int m,
                     int retry) {
  const std::size_t bound =
      64u * (std::bit_width(static_cast<unsigned>(n)) +
             std::bit_width(static_cast<unsigned>(m)) +
             static_cast<unsigned>(retry) + 4u);
  for (const TaggedPoint& tp : instance.points) {
    if (ratBitLength(tp.p.x) > bound || ratBitLength(tp.p.y) > bound)
      throw std::logic_error(
          "coordinate bit-length exceeds the polynomial envelope");
  }
}

}  // namespace

ReductionInstance buildInstance(const MonotoneFormula& formula,
                                const BuildParams& params) {
  if (params.retries < 1)
    throw std::invalid_argument("retries must be positive");
  const MonotoneFormula f = formula.validated ? formula : validate(formula);
  const int n = f.n();
  const int m = f.m();
  Rat eps = sign(params.epsilon0) > 0 ? params.epsilon0 : defaultEpsilon(m);
  Rat del = sign(params.delta0) > 0 ? params.delta0 : defaultDelta(n, m);

  std::vector<std::string> attempts;
  for (int r = 0; r < params.retries; ++r) {
    try {
      ReductionInstance instance = buildGadgets(phase2(phase1(f, eps)), del);
      instance.retryIndex = r;
      checkBitLengths(instance, n, m, r);
      return instance;
    } catch (const AuditFailure& e) {
      attempts.push_back("retry " + std::to_string(r) + ": " + e.what());
    } catch (const EpsilonTooLarge& e) {
      attempts.push_back("retry " + std::to_string(r) + ": " + e.what());
    }
    eps /= 2;
    del /= 2;
  }
  throw ConstructionExhausted(std::move(attempts));
}

}  // namespace coverlab
