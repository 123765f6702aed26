#include "coverlab/json_io.hpp"

#include <algorithm>
#include <fstream>

namespace coverlab {
namespace {

Rat parseRat(const std::string& text, const char* what) {
  try {
    return ratFromString(text);
  } catch (const std::invalid_argument& e) {
    throw JsonFormatError(std::string(what) + ": " + e.what());
  }
}

Rat ratField(const Json& j, const char* key) {
  return parseRat(j.at(key).get<std::string>(), key);
}

Int parseInt(const std::string& text, const char* what) {
  try {
    return Int(text);
  } catch (const std::invalid_argument&) {
    throw JsonFormatError(std::string(what) + ": not an integer: " + text);
  }
}

Json pointJson(const Point& p) {
  return Json{{"x", ratToString(p.x)}, {"y", ratToString(p.y)}};
}

Json pairJson(const Point& p) {
  return Json::array({ratToString(p.x), ratToString(p.y)});
}

Point pairFromJson(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw JsonFormatError(std::string(what) +
                          ": expected a two-element coordinate array");
  return Point{parseRat(j[0].get<std::string>(), what),
               parseRat(j[1].get<std::string>(), what)};
}

void parseTag(const std::string& tag, TaggedPoint& tp) {
  const auto fail = [&tag]() -> void {
    throw JsonFormatError("bad point tag: " + tag);
  };
  const auto number = [&](const std::string& s) {
    if (s.empty()) fail();
    try {
      return std::stoi(s);
    } catch (const std::exception&) {
      fail();
      return 0;
    }
  };
  if (tag.rfind("clause:", 0) == 0) {
    tp.isClausePoint = true;
    tp.clauseIndex = number(tag.substr(7));
    return;
  }
  if (tag.rfind("gadget:", 0) == 0) {
    const std::string rest = tag.substr(7);
    const std::size_t p1 = rest.find(':');
    const std::size_t p2 = p1 == std::string::npos ? p1 : rest.find(':', p1 + 1);
    if (p2 == std::string::npos) fail();
    tp.variable = number(rest.substr(0, p1));
    tp.posIndex = number(rest.substr(p1 + 1, p2 - p1 - 1));
    tp.negIndex = number(rest.substr(p2 + 1));
    return;
  }
  fail();
}

}  // namespace

Json formulaToJson(const MonotoneFormula& formula) {
  Json clauses = Json::array();
  for (const Clause& c : formula.clauses) {
    Json vars = Json::array();
    for (const int v : c.vars) vars.push_back(v);
    clauses.push_back(Json{{"sign", c.sign == Sign::Pos ? "pos" : "neg"},
                           {"vars", std::move(vars)}});
  }
  return Json{{"variables", formula.variableCount},
              {"clauses", std::move(clauses)}};
}

MonotoneFormula formulaFromJson(const Json& j) {
  try {
    MonotoneFormula f;
    f.variableCount = j.at("variables").get<int>();
    for (const Json& cj : j.at("clauses")) {
      Clause c;
      const std::string sign = cj.at("sign").get<std::string>();
      if (sign == "pos")
        c.sign = Sign::Pos;
      else if (sign == "neg")
        c.sign = Sign::Neg;
      else
        throw JsonFormatError("clause sign must be \"pos\" or \"neg\"");
      for (const Json& vj : cj.at("vars")) c.vars.push_back(vj.get<int>());
      f.clauses.push_back(std::move(c));
    }
    return f;
  } catch (const Json::exception& e) {
    throw JsonFormatError(std::string("formula: ") + e.what());
  }
}

Json pointsToJson(const std::vector<Point>& points) {
  Json arr = Json::array();
  for (const Point& p : points) arr.push_back(pointJson(p));
  return Json{{"points", std::move(arr)}};
}

std::vector<Point> pointsFromJson(const Json& j) {
  try {
    std::vector<Point> points;
    for (const Json& pj : j.at("points"))
      points.push_back(Point{ratField(pj, "x"), ratField(pj, "y")});
    return points;
  } catch (const Json::exception& e) {
    throw JsonFormatError(std::string("points: ") + e.what());
  }
}

Json instanceToJson(const ReductionInstance& instance) {
  Json pts = Json::array();
  for (const TaggedPoint& tp : instance.points) {
    Json pj = pointJson(tp.p);
    pj["tag"] = tp.tag();
    pts.push_back(std::move(pj));
  }
  Json lines = Json::array();
  for (const CatalogueEntry& e : instance.catalogue) {
    Json le{{"a", e.line.a.get_str()},
            {"b", e.line.b.get_str()},
            {"c", e.line.c.get_str()},
            {"variable", e.variable},
            {"side", e.pos ? "pos" : "neg"},
            {"index", e.lineIndex},
            {"clause", e.clauseEdge ? e.clauseIndex : -1}};
    Json expected = Json::array();
    for (const std::size_t i : e.expected) expected.push_back(i);
    le["expected"] = std::move(expected);
    lines.push_back(std::move(le));
  }
  return Json{{"points", std::move(pts)},
              {"k", instance.budget},
              {"epsilon", ratToString(instance.epsilon)},
              {"delta", ratToString(instance.delta)},
              {"lines", std::move(lines)}};
}

ReductionInstance instanceFromJson(const Json& j) {
  try {
    ReductionInstance inst;
    for (const Json& pj : j.at("points")) {
      TaggedPoint tp;
      tp.p = Point{ratField(pj, "x"), ratField(pj, "y")};
      parseTag(pj.at("tag").get<std::string>(), tp);
      inst.points.push_back(std::move(tp));
    }
    std::size_t m = 0;
    while (m < inst.points.size() && inst.points[m].isClausePoint) ++m;
    if (m == 0) throw JsonFormatError("instance has no clause points");
    const std::size_t rest = inst.points.size() - m;
    if (rest == 0 || rest % (m * m) != 0)
      throw JsonFormatError("gadget point count is not n*m^2");
    const std::size_t n = rest / (m * m);
    for (std::size_t i = 0; i < inst.points.size(); ++i) {
      std::string want;
      if (i < m) {
        want = "clause:" + std::to_string(i);
      } else {
        const std::size_t r = i - m;
        want = "gadget:" + std::to_string(r / (m * m) + 1) + ":" +
               std::to_string((r % (m * m)) / m) + ":" + std::to_string(r % m);
      }
      if (inst.points[i].tag() != want)
        throw JsonFormatError("point " + std::to_string(i) +
                              " breaks the canonical tag order");
    }

    inst.epsilon = ratField(j, "epsilon");
    inst.delta = ratField(j, "delta");
    if (sign(inst.epsilon) <= 0 || sign(inst.delta) <= 0)
      throw JsonFormatError("epsilon and delta must be positive");
    inst.budget = j.at("k").get<int>();
    if (inst.budget != static_cast<int>(n * m))
      throw JsonFormatError("k does not equal n*m");

    const Json& jlines = j.at("lines");
    if (!jlines.is_array() || jlines.size() != 2 * n * m)
      throw JsonFormatError("expected 2*n*m catalogue lines");
    std::size_t at = 0;
    for (std::size_t v = 1; v <= n; ++v) {
      for (const bool posSide : {true, false}) {
        for (std::size_t idx = 0; idx < m; ++idx, ++at) {
          const Json& le = jlines[at];
          CatalogueEntry e;
          const Int a = parseInt(le.at("a").get<std::string>(), "line a");
          const Int b = parseInt(le.at("b").get<std::string>(), "line b");
          const Int c = parseInt(le.at("c").get<std::string>(), "line c");
          e.line = Line::fromCoefficients(Rat(a), Rat(b), Rat(c));
          if (e.line.a != a || e.line.b != b || e.line.c != c)
            throw JsonFormatError("line coefficients are not canonical");
          e.variable = le.at("variable").get<int>();
          e.pos = le.at("side").get<std::string>() == "pos";
          e.lineIndex = le.at("index").get<int>();
          e.clauseIndex = le.at("clause").get<int>();
          e.clauseEdge = e.clauseIndex >= 0;
          if (e.variable != static_cast<int>(v) || e.pos != posSide ||
              e.lineIndex != static_cast<int>(idx))
            throw JsonFormatError("catalogue line " + std::to_string(at) +
                                  " breaks the canonical order");
          if (e.clauseEdge && e.clauseIndex >= static_cast<int>(m))
            throw JsonFormatError("catalogue clause index out of range");
          for (const Json& ej : le.at("expected"))
            e.expected.push_back(ej.get<std::size_t>());
          std::vector<std::size_t> want;
          for (std::size_t o = 0; o < m; ++o)
            want.push_back(m + (v - 1) * m * m +
                           (posSide ? idx * m + o : o * m + idx));
          if (e.clauseEdge)
            want.push_back(static_cast<std::size_t>(e.clauseIndex));
          std::sort(want.begin(), want.end());
          if (e.expected != want)
            throw JsonFormatError("catalogue line " + std::to_string(at) +
                                  " has unexpected incidences");
          for (const std::size_t pi : e.expected) {
            if (!e.line.contains(inst.points[pi].p))
              throw JsonFormatError("point " + std::to_string(pi) +
                                    " is off its catalogued line");
          }
          inst.catalogue.push_back(std::move(e));
        }
      }
    }

    MonotoneFormula f;
    f.variableCount = static_cast<int>(n);
    f.clauses.resize(m);
    std::vector<int> signSeen(m, -1);
    for (const CatalogueEntry& e : inst.catalogue) {
      if (!e.clauseEdge) continue;
      Clause& c = f.clauses[static_cast<std::size_t>(e.clauseIndex)];
      c.vars.push_back(e.variable);
      const int s = e.pos ? 1 : 0;
      if (signSeen[static_cast<std::size_t>(e.clauseIndex)] == -1) {
        signSeen[static_cast<std::size_t>(e.clauseIndex)] = s;
        c.sign = e.pos ? Sign::Pos : Sign::Neg;
      } else if (signSeen[static_cast<std::size_t>(e.clauseIndex)] != s) {
        throw JsonFormatError("clause has edges on both sides");
      }
    }
    for (Clause& c : f.clauses) std::sort(c.vars.begin(), c.vars.end());
    try {
      inst.formula = validate(f);
    } catch (const FormulaError& e) {
      throw JsonFormatError(std::string("reconstructed formula invalid: ") +
                            e.what());
    }

    std::vector<Point> clausePoints;
    for (std::size_t c = 0; c < m; ++c) clausePoints.push_back(inst.points[c].p);
    for (std::size_t v = 1; v <= n; ++v) {
      VariableGadget g;
      g.variable = static_cast<int>(v);
      g.posApex = Point{Rat(static_cast<long>(v)), Rat(-inst.delta)};
      g.negApex =
          Point{Rat(static_cast<long>(v)) + inst.delta / 2, inst.delta};
      for (const CatalogueEntry& e : inst.catalogue) {
        if (e.variable != static_cast<int>(v)) continue;
        GadgetLine gl;
        gl.line = e.line;
        gl.clauseEdge = e.clauseEdge;
        gl.clauseIndex = e.clauseEdge ? e.clauseIndex : -1;
        (e.pos ? g.posLines : g.negLines).push_back(std::move(gl));
      }
      for (const GadgetLine& gl : g.posLines) {
        if (!gl.line.contains(g.posApex))
          throw JsonFormatError("pos line misses its apex");
      }
      for (const GadgetLine& gl : g.negLines) {
        if (!gl.line.contains(g.negApex))
          throw JsonFormatError("neg line misses its apex");
      }
      g.crossings.assign(m, std::vector<Point>(m));
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t o = 0; o < m; ++o) {
          g.crossings[i][o] =
              inst.points[m + (v - 1) * m * m + i * m + o].p;
        }
      }
      recomputeDrawnSegments(g, clausePoints, inst.delta);
      inst.gadgets.push_back(std::move(g));
    }
    return inst;
  } catch (const Json::exception& e) {
    throw JsonFormatError(std::string("instance: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw JsonFormatError(std::string("instance: ") + e.what());
  }
}

Json coverToJson(const SegmentCover& cover) {
  Json arr = Json::array();
  for (const Segment& s : cover.segments)
    arr.push_back(Json{{"a", pairJson(s.a)}, {"b", pairJson(s.b)}});
  return Json{{"segments", std::move(arr)}};
}

SegmentCover coverFromJson(const Json& j) {
  try {
    SegmentCover cover;
    for (const Json& sj : j.at("segments")) {
      const Point a = pairFromJson(sj.at("a"), "segment endpoint");
      const Point b = pairFromJson(sj.at("b"), "segment endpoint");
      cover.segments.push_back(a == b ? Segment::point(a)
                                      : Segment::bounded(a, b));
    }
    return cover;
  } catch (const Json::exception& e) {
    throw JsonFormatError(std::string("cover: ") + e.what());
  }
}

Json cutsToJson(const CutSequence& cuts) {
  Json arr = Json::array();
  for (const Segment& s : cuts.cuts) {
    arr.push_back(Json{{"a", pairJson(s.a)},
                       {"b", pairJson(s.b)},
                       {"unbounded_a", s.unboundedA},
                       {"unbounded_b", s.unboundedB}});
  }
  return Json{{"cuts", std::move(arr)}};
}

CutSequence cutsFromJson(const Json& j) {
  try {
    CutSequence seq;
    for (const Json& sj : j.at("cuts")) {
      Segment s;
      s.a = pairFromJson(sj.at("a"), "cut endpoint");
      s.b = pairFromJson(sj.at("b"), "cut endpoint");
      s.unboundedA = sj.at("unbounded_a").get<bool>();
      s.unboundedB = sj.at("unbounded_b").get<bool>();
      if (s.a == s.b && (s.unboundedA || s.unboundedB))
        throw JsonFormatError("unbounded cut needs two distinct anchors");
      seq.cuts.push_back(std::move(s));
    }
    return seq;
  } catch (const Json::exception& e) {
    throw JsonFormatError(std::string("cuts: ") + e.what());
  }
}

Json verdictToJson(const Verdict& verdict) {
  Json j{{"accepted", verdict.accepted},
         {"code", violationCodeName(verdict.code)},
         {"index_a", verdict.indexA},
         {"index_b", verdict.indexB},
         {"detail", verdict.detail}};
  if (verdict.where) j["where"] = pairJson(*verdict.where);
  return j;
}

Json assignmentToJson(const Assignment& assignment) {
  Json values = Json::array();
  for (bool v : assignment.values) values.push_back(v);
  return Json{{"values", values}};
}

Assignment assignmentFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("values") || !j["values"].is_array())
    throw JsonFormatError("assignment: expected { \"values\": [bool, ...] }");
  Assignment a;
  for (const Json& v : j["values"]) {
    if (!v.is_boolean()) throw JsonFormatError("assignment: non-bool value");
    a.values.push_back(v.get<bool>());
  }
  return a;
}

Json oracleReportToJson(const std::string& mode, int limit,
                        const std::string& result, const Json& witness,
                        std::int64_t nodesExplored) {
  return Json{{"mode", mode},
              {"limit", limit},
              {"result", result},
              {"witness", witness},
              {"nodes_explored", nodesExplored}};
}

Json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonFormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw JsonFormatError(path + ": " + e.what());
  }
}

void writeJsonFile(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw JsonFormatError("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

}  // namespace coverlab
