#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <set>

#include "coverlab/json_io.hpp"
#include "coverlab/reduction.hpp"

using namespace coverlab;

namespace {

MonotoneFormula mk(int n,
                   std::vector<std::pair<bool, std::vector<int>>> clauses) {
  MonotoneFormula f;
  f.variableCount = n;
  for (auto& [pos, vars] : clauses) {
    Clause c;
    c.sign = pos ? Sign::Pos : Sign::Neg;
    c.vars = vars;
    f.clauses.push_back(std::move(c));
  }
  return f;
}

Point pt(long xn, long xd, long yn, long yd) {
  return Point{makeRat(xn, xd), makeRat(yn, yd)};
}

std::vector<std::filesystem::path> corpusFiles() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(
           std::string(COVERLAB_TEST_DATA_DIR) + "/corpus"))
    files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

TEST_CASE("phase1 places clause points by span midpoint and nesting depth") {
  const auto f =
      validate(mk(3, {{true, {1, 3}}, {true, {1, 2}}, {false, {1, 3}}}));
  const DrawingSkeleton sk = phase1(f, makeRat(1, 4));

  REQUIRE(sk.variablePoints.size() == 3);
  CHECK(sk.variablePoints[0] == pt(1, 1, 0, 1));
  CHECK(sk.variablePoints[2] == pt(3, 1, 0, 1));

  REQUIRE(sk.clausePoints.size() == 3);
  CHECK(sk.clausePoints[0] == pt(2, 1, 2, 1));     // span 2, level 0
  CHECK(sk.clausePoints[1] == pt(3, 2, 3, 4));     // span 1, level 1
  CHECK(sk.clausePoints[2] == pt(2, 1, -2, 1));    // mirrored below
  CHECK(sk.edges.size() == 6);
  CHECK_FALSE(sk.sheared);
}

TEST_CASE("phase1 single clause sits at its span height") {
  const auto f = validate(mk(2, {{true, {1, 2}}}));
  const DrawingSkeleton sk = phase1(f, defaultEpsilon(1));
  CHECK(sk.clausePoints[0] == pt(3, 2, 1, 1));
}

TEST_CASE("phase1 rejects an epsilon that swallows a nesting level") {
  const auto f = validate(mk(3, {{true, {1, 3}}, {true, {1, 2}}}));
  CHECK_THROWS_AS(phase1(f, Rat(1)), EpsilonTooLarge);
  CHECK_NOTHROW(phase1(f, makeRat(1, 4)));
}

TEST_CASE("phase2 shears plus and minus five quarters") {
  const auto f =
      validate(mk(3, {{true, {1, 3}}, {true, {1, 2}}, {false, {1, 3}}}));
  const DrawingSkeleton sk = phase2(phase1(f, makeRat(1, 4)));

  CHECK(sk.sheared);
  CHECK(sk.clausePoints[0] == pt(-1, 2, 2, 1));
  CHECK(sk.clausePoints[1] == pt(9, 16, 3, 4));
  CHECK(sk.clausePoints[2] == pt(-1, 2, -2, 1));
  CHECK(sk.variablePoints[1] == pt(2, 1, 0, 1));  // axis is fixed

  for (const SkeletonEdge& e : sk.edges) {
    const Point& cp = sk.clausePoints[static_cast<std::size_t>(e.clauseIndex)];
    CHECK(sign(cp.x - e.variable) < 0);
  }
  CHECK_THROWS_AS(phase2(sk), std::invalid_argument);
}

TEST_CASE("buildInstance emits m + n*m^2 points with budget n*m") {
  const ReductionInstance inst =
      buildInstance(mk(3, {{true, {1, 3}}, {true, {1, 2}}}));
  CHECK(inst.points.size() == 14);
  CHECK(inst.budget == 6);
  CHECK(inst.retryIndex == 0);
  CHECK(inst.epsilon == makeRat(1, 4));
  CHECK(inst.delta == makeRat(1, 192));
  CHECK(inst.gadgets.size() == 3);
  CHECK(inst.catalogue.size() == 12);
}

TEST_CASE("gadget anatomy for the two-variable formula") {
  const ReductionInstance inst =
      buildInstance(mk(2, {{true, {1, 2}}, {false, {1, 2}}}));
  REQUIRE(inst.points.size() == 10);
  CHECK(inst.budget == 4);

  const VariableGadget& g = inst.gadgets[0];
  CHECK(g.posApex == Point{Rat(1), makeRat(-1, 128)});
  CHECK(g.negApex == Point{Rat(1) + makeRat(1, 256), makeRat(1, 128)});
  REQUIRE(g.posLines.size() == 2);
  REQUIRE(g.negLines.size() == 2);
  CHECK(g.posLines[0].clauseEdge);
  CHECK(g.posLines[0].clauseIndex == 0);
  CHECK_FALSE(g.posLines[1].clauseEdge);
  CHECK(g.negLines[0].clauseEdge);
  CHECK(g.negLines[0].clauseIndex == 1);

  // every line passes through its apex and its own m crossings
  for (int i = 0; i < 2; ++i) {
    CHECK(g.posLines[i].line.contains(g.posApex));
    CHECK(g.negLines[i].line.contains(g.negApex));
    for (int j = 0; j < 2; ++j) {
      CHECK(g.posLines[i].line.contains(g.crossings[i][j]));
      CHECK(g.negLines[j].line.contains(g.crossings[i][j]));
    }
  }

  // index layout: clause points first, then gadget points in (v, i, j) order
  CHECK(inst.points[0].tag() == "clause:0");
  CHECK(inst.points[2].tag() == "gadget:1:0:0");
  CHECK(inst.points[9].tag() == "gadget:2:1:1");
  CHECK(inst.gadgetPointIndex(2, 1, 1) == 9);
  CHECK(inst.points[inst.gadgetPointIndex(1, 1, 0)].p == g.crossings[1][0]);
}

TEST_CASE("catalogue lines carry exactly their own crossings") {
  const ReductionInstance inst = buildInstance(
      mk(3, {{true, {1, 3}}, {true, {1, 2}}, {false, {2, 3}}}));
  for (const CatalogueEntry& e : inst.catalogue) {
    std::size_t onLine = 0;
    for (const TaggedPoint& tp : inst.points)
      if (e.line.contains(tp.p)) ++onLine;
    CHECK(onLine == e.expected.size());
    CHECK(e.expected.size() == (e.clauseEdge ? 4u : 3u));
  }
}

TEST_CASE("audit flags a forged point as a catalogue mismatch") {
  ReductionInstance inst =
      buildInstance(mk(3, {{true, {1, 3}}, {true, {1, 2}}}));
  REQUIRE(audit(inst).passed());

  inst.points[inst.gadgetPointIndex(2, 0, 1)].p.y += makeRat(1, 1000000);
  const AuditReport report = audit(inst);
  REQUIRE_FALSE(report.passed());
  bool sawMismatch = false;
  for (const AuditViolation& v : report.violations)
    if (v.clause == 'a') sawMismatch = true;
  CHECK(sawMismatch);
}

TEST_CASE("audit catches crossings escaping their exclusion zone") {
  const auto f = validate(mk(2, {{true, {1, 2}}, {false, {1, 2}}}));
  const DrawingSkeleton sk = phase2(phase1(f, defaultEpsilon(2)));
  try {
    buildGadgets(sk, Rat(1));
    FAIL("audit accepted a gadget spread wider than the exclusion zone");
  } catch (const AuditFailure& e) {
    REQUIRE_FALSE(e.report.passed());
    bool sawPlacement = false;
    for (const AuditViolation& v : e.report.violations)
      if (v.clause == 'd') sawPlacement = true;
    CHECK(sawPlacement);
  }
}

TEST_CASE("invalid formulas are rejected before any geometry is built") {
  // strictly interleaving spans
  CHECK_THROWS_AS(buildInstance(mk(4, {{true, {1, 3}}, {true, {2, 4}}})),
                  FormulaError);
  // duplicate clause
  CHECK_THROWS_AS(buildInstance(mk(2, {{true, {1, 2}}, {true, {1, 2}}})),
                  FormulaError);
}

TEST_CASE("three same-side clauses on one level exhaust construction") {
  // their clause points share a horizontal line, which no retry can fix
  const auto f = mk(4, {{true, {1, 2}}, {true, {2, 3}}, {true, {3, 4}}});
  BuildParams params;
  params.retries = 3;
  try {
    buildInstance(f, params);
    FAIL("expected ConstructionExhausted");
  } catch (const ConstructionExhausted& e) {
    REQUIRE(e.attempts.size() == 3);
    for (const std::string& a : e.attempts)
      CHECK(a.find("uncatalogued line") != std::string::npos);
  }
}

TEST_CASE("every corpus formula builds, audits clean, and obeys the size law") {
  const auto files = corpusFiles();
  REQUIRE(files.size() == 11);
  int unsatCount = 0;
  for (const auto& path : files) {
    CAPTURE(path.string());
    const MonotoneFormula f =
        validate(formulaFromJson(readJsonFile(path.string())));
    const ReductionInstance inst = buildInstance(f);
    const std::size_t n = static_cast<std::size_t>(f.n());
    const std::size_t m = static_cast<std::size_t>(f.m());
    CHECK(inst.points.size() == m + n * m * m);
    CHECK(inst.budget == static_cast<int>(n * m));
    CHECK(inst.retryIndex == 0);
    CHECK(inst.catalogue.size() == 2 * n * m);
    if (!satSolve(f)) ++unsatCount;

    std::set<std::pair<std::string, std::string>> seen;
    for (const TaggedPoint& tp : inst.points)
      seen.insert({ratToString(tp.p.x), ratToString(tp.p.y)});
    CHECK(seen.size() == inst.points.size());
  }
  CHECK(unsatCount == 1);
}

TEST_CASE("rebuilding an instance is deterministic") {
  const auto f = mk(3, {{true, {1, 3}}, {true, {1, 2}}, {false, {2, 3}}});
  const ReductionInstance a = buildInstance(f);
  const ReductionInstance b = buildInstance(f);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i)
    CHECK(a.points[i].p == b.points[i].p);
  CHECK(instanceToJson(a).dump(2) == instanceToJson(b).dump(2));
}

TEST_CASE("instance json round trips through parse and re-emit") {
  const ReductionInstance built =
      buildInstance(mk(3, {{true, {1, 3}}, {true, {1, 2}}, {false, {2, 3}}}));
  const Json out = instanceToJson(built);
  const ReductionInstance parsed = instanceFromJson(out);

  CHECK(instanceToJson(parsed).dump(2) == out.dump(2));
  CHECK(parsed.formula.m() == built.formula.m());
  CHECK(parsed.budget == built.budget);
  REQUIRE(parsed.gadgets.size() == built.gadgets.size());
  for (std::size_t v = 0; v < built.gadgets.size(); ++v) {
    CHECK(parsed.gadgets[v].posApex == built.gadgets[v].posApex);
    CHECK(parsed.gadgets[v].negApex == built.gadgets[v].negApex);
    for (std::size_t i = 0; i < built.gadgets[v].posLines.size(); ++i) {
      CHECK(parsed.gadgets[v].posLines[i].drawn ==
            built.gadgets[v].posLines[i].drawn);
      CHECK(parsed.gadgets[v].negLines[i].drawn ==
            built.gadgets[v].negLines[i].drawn);
    }
  }
  CHECK(audit(parsed).passed());
}

TEST_CASE("instance parser rejects tampered files") {
  const ReductionInstance built =
      buildInstance(mk(3, {{true, {1, 3}}, {true, {1, 2}}}));
  Json out = instanceToJson(built);

  Json moved = out;
  moved["points"][5]["x"] = "12345/7";
  CHECK_THROWS_AS(instanceFromJson(moved), JsonFormatError);

  Json badBudget = out;
  badBudget["k"] = 7;
  CHECK_THROWS_AS(instanceFromJson(badBudget), JsonFormatError);

  Json badTag = out;
  badTag["points"][0]["tag"] = "gadget:1:0:0";
  CHECK_THROWS_AS(instanceFromJson(badTag), JsonFormatError);

  Json badExpected = out;
  badExpected["lines"][0]["expected"][1] = 1;
  CHECK_THROWS_AS(instanceFromJson(badExpected), JsonFormatError);
}

TEST_CASE("formula json carries signs and variables faithfully") {
  const auto f = mk(4, {{true, {1, 2, 4}}, {false, {2, 3}}});
  const MonotoneFormula back = formulaFromJson(formulaToJson(f));
  CHECK(back.variableCount == 4);
  REQUIRE(back.clauses.size() == 2);
  CHECK(back.clauses[0].sign == Sign::Pos);
  CHECK(back.clauses[0].vars == std::vector<int>{1, 2, 4});
  CHECK(back.clauses[1].sign == Sign::Neg);

  CHECK_THROWS_AS(
      formulaFromJson(Json::parse(R"({"variables":2,"clauses":[{"sign":"mixed","vars":[1,2]}]})")),
      JsonFormatError);
}
