#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "coverlab/json_io.hpp"
#include "coverlab/witness.hpp"

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

std::vector<std::filesystem::path> corpusFiles() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(
           std::string(COVERLAB_TEST_DATA_DIR) + "/corpus"))
    files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

TEST_CASE("assignment cover accepts at budget n*m and encodes the bundles") {
  const ReductionInstance inst =
      buildInstance(mk(3, {{true, {1, 3}}, {true, {1, 2}}}));
  const auto model = satSolve(inst.formula);
  REQUIRE(model);

  const SegmentCover cover = assignmentToCover(inst, *model);
  CHECK(cover.segments.size() == 6);
  const Verdict verdict =
      verifySegmentCover(inst.plainPoints(), cover, inst.budget);
  CAPTURE(verdict.detail);
  CHECK(verdict.accepted);

  // each clause point on exactly one segment, apexes on none
  for (int c = 0; c < inst.formula.m(); ++c) {
    const Point& cp = inst.points[inst.clausePointIndex(c)].p;
    int hits = 0;
    for (const Segment& s : cover.segments)
      if (onSegment(cp, s)) ++hits;
    CHECK(hits == 1);
  }
  for (const VariableGadget& g : inst.gadgets) {
    for (const Segment& s : cover.segments) {
      CHECK_FALSE(onSegment(g.posApex, s));
      CHECK_FALSE(onSegment(g.negApex, s));
    }
  }
}

TEST_CASE("false variables use their neg bundles") {
  const ReductionInstance inst =
      buildInstance(mk(2, {{true, {1, 2}}, {false, {1, 2}}}));
  // lexicographically smallest model is (F, T)
  const auto model = satSolve(inst.formula);
  REQUIRE(model);
  REQUIRE_FALSE(model->value(1));
  REQUIRE(model->value(2));

  const SegmentCover cover = assignmentToCover(inst, *model);
  const VariableGadget& g1 = inst.gadgets[0];
  // variable 1 is false: its segments lie on neg lines, so they contain the
  // neg-side crossings and the neg clause point but no pos-only geometry
  const Point& negClausePoint = inst.points[inst.clausePointIndex(1)].p;
  bool covered = false;
  for (const Segment& s : cover.segments) covered |= onSegment(negClausePoint, s);
  CHECK(covered);
  const Point& posClausePoint = inst.points[inst.clausePointIndex(0)].p;
  int posHits = 0;
  for (const Segment& s : cover.segments)
    if (onSegment(posClausePoint, s)) ++posHits;
  CHECK(posHits == 1);  // covered by variable 2's pos bundle instead
  for (const Segment& s : cover.segments)
    CHECK_FALSE(onSegment(g1.posApex, s));
}

TEST_CASE("unsatisfying assignments are refused with the clause index") {
  const ReductionInstance inst =
      buildInstance(mk(2, {{true, {1, 2}}, {false, {1, 2}}}));
  Assignment allTrue{{true, true}};
  try {
    assignmentToCover(inst, allTrue);
    FAIL("expected UnsatisfiedAssignment");
  } catch (const UnsatisfiedAssignment& e) {
    CHECK(e.clauseIndex == 1);
  }
  CHECK_THROWS_AS(assignmentToCover(inst, Assignment{{true}}),
                  std::invalid_argument);
}

TEST_CASE("witness covers extend to guillotine sequences of the same size") {
  const ReductionInstance inst = buildInstance(
      mk(3, {{true, {1, 3}}, {true, {1, 2}}, {false, {2, 3}}}));
  const auto model = satSolve(inst.formula);
  REQUIRE(model);
  const SegmentCover cover = assignmentToCover(inst, *model);
  const CutSequence cuts = coverToGuillotine(inst, cover);

  REQUIRE(cuts.cuts.size() == cover.segments.size());
  CHECK(cuts.cuts.front().unboundedA);
  CHECK(cuts.cuts.front().unboundedB);
  const Verdict verdict =
      verifyGuillotineSequence(inst.plainPoints(), cuts, inst.budget);
  CAPTURE(verdict.detail);
  CHECK(verdict.accepted);

  // shortening the cuts closes the loop back to an accepted segment cover
  const SegmentCover trimmed = shortenCuts(inst.plainPoints(), cuts);
  const Verdict again =
      verifySegmentCover(inst.plainPoints(), trimmed, inst.budget);
  CHECK(again.accepted);
}

TEST_CASE("every satisfiable corpus formula round trips through the witness") {
  for (const auto& path : corpusFiles()) {
    CAPTURE(path.string());
    const MonotoneFormula f =
        validate(formulaFromJson(readJsonFile(path.string())));
    const auto model = satSolve(f);
    if (!model) continue;  // the UNSAT formula is the oracle's business

    const ReductionInstance inst = buildInstance(f);
    const SegmentCover cover = assignmentToCover(inst, *model);
    const std::vector<Point> pts = inst.plainPoints();
    CHECK(verifySegmentCover(pts, cover, inst.budget).accepted);

    const CutSequence cuts = coverToGuillotine(inst, cover);
    CHECK(cuts.cuts.size() == static_cast<std::size_t>(inst.budget));
    const Verdict verdict = verifyGuillotineSequence(pts, cuts, inst.budget);
    CAPTURE(verdict.detail);
    CHECK(verdict.accepted);
  }
}

TEST_CASE("cuts within a bundle run right to left by supporting line") {
  const ReductionInstance inst =
      buildInstance(mk(3, {{true, {1, 3}}, {true, {1, 2}}, {false, {2, 3}}}));
  const auto model = satSolve(inst.formula);
  REQUIRE(model);
  const CutSequence cuts =
      coverToGuillotine(inst, assignmentToCover(inst, *model));
  const int m = inst.formula.m();
  REQUIRE(cuts.cuts.size() == static_cast<std::size_t>(inst.budget));
  for (int block = 0; block < inst.formula.variableCount; ++block) {
    for (int i = 1; i < m; ++i) {
      const Segment& prev = cuts.cuts[block * m + i - 1];
      const Segment& cur = cuts.cuts[block * m + i];
      CHECK(Line::throughPoints(prev.a, prev.b).xIntercept() >
            Line::throughPoints(cur.a, cur.b).xIntercept());
    }
  }
}

TEST_CASE("some satisfiable covers admit no bundle ordering") {
  const MonotoneFormula f = validate(formulaFromJson(readJsonFile(
      std::string(COVERLAB_TEST_DATA_DIR) + "/ordering_deadlock.json")));
  const auto model = satSolve(f);
  REQUIRE(model);
  const ReductionInstance inst = buildInstance(f);
  const SegmentCover cover = assignmentToCover(inst, *model);
  CHECK(verifySegmentCover(inst.plainPoints(), cover, inst.budget).accepted);
  try {
    coverToGuillotine(inst, cover);
    FAIL("expected OrderingFailure");
  } catch (const OrderingFailure& e) {
    CHECK(std::string(e.what()).find("no bundle order") != std::string::npos);
  }
}

TEST_CASE("covers that do not match the instance are refused") {
  const ReductionInstance inst =
      buildInstance(mk(3, {{true, {1, 3}}, {true, {1, 2}}}));
  const auto model = satSolve(inst.formula);
  REQUIRE(model);
  const SegmentCover cover = assignmentToCover(inst, *model);

  SegmentCover wrongSize = cover;
  wrongSize.segments.pop_back();
  CHECK_THROWS_AS(coverToGuillotine(inst, wrongSize), WitnessError);

  SegmentCover offLine = cover;
  offLine.segments[0] = Segment::bounded(
      Point{cover.segments[0].a.x, cover.segments[0].a.y + Rat(1)},
      Point{cover.segments[0].b.x, cover.segments[0].b.y + Rat(1)});
  CHECK_THROWS_AS(coverToGuillotine(inst, offLine), WitnessError);
}

TEST_CASE("guillotine conversion is deterministic") {
  const ReductionInstance inst =
      buildInstance(mk(3, {{true, {1, 3}}, {true, {1, 2}}}));
  const auto model = satSolve(inst.formula);
  REQUIRE(model);
  const CutSequence a =
      coverToGuillotine(inst, assignmentToCover(inst, *model));
  const CutSequence b =
      coverToGuillotine(inst, assignmentToCover(inst, *model));
  CHECK(cutsToJson(a).dump(2) == cutsToJson(b).dump(2));
}
