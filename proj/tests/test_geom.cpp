#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "coverlab/geom.hpp"

using namespace coverlab;

namespace {

Point pt(long x, long y) { return Point{Rat(x), Rat(y)}; }

Point pt(long xn, long xd, long yn, long yd) {
  return Point{makeRat(xn, xd), makeRat(yn, yd)};
}

Rat randomRat(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-12, 12);
  std::uniform_int_distribution<long> den(1, 8);
  return makeRat(num(rng), den(rng));
}

Point randomPoint(std::mt19937& rng) {
  return Point{randomRat(rng), randomRat(rng)};
}

}  // namespace

TEST_CASE("rational parsing and printing round-trips") {
  CHECK(ratToString(ratFromString("3/4")) == "3/4");
  CHECK(ratToString(ratFromString("-6/8")) == "-3/4");
  CHECK(ratToString(ratFromString("5")) == "5");
  CHECK(ratToString(ratFromString("10/2")) == "5");
  CHECK(ratFromString("0/7") == 0);
  CHECK_THROWS(ratFromString("1/0"));
  CHECK_THROWS(ratFromString("a"));
  CHECK_THROWS(ratFromString(""));
}

TEST_CASE("fixed-point decimal rendering is exact") {
  CHECK(ratToDecimal(makeRat(1, 2), 9) == "0.500000000");
  CHECK(ratToDecimal(makeRat(-1, 3), 9) == "-0.333333333");
  CHECK(ratToDecimal(makeRat(2, 3), 9) == "0.666666667");
  CHECK(ratToDecimal(Rat(7), 9) == "7.000000000");
  CHECK(ratToDecimal(makeRat(-1, 4), 2) == "-0.25");
  CHECK(ratToDecimal(makeRat(1, 1000000000L), 9) == "0.000000001");
}

TEST_CASE("orientation matches fixed triples") {
  CHECK(orientation(pt(0, 0), pt(1, 0), pt(2, 0)) == Orient::Collinear);
  CHECK(orientation(pt(0, 0), pt(1, 0), pt(0, 1)) ==
        Orient::CounterClockwise);
  CHECK(orientation(pt(0, 0), pt(0, 1), pt(1, 1)) == Orient::Clockwise);
}

TEST_CASE("orientation antisymmetry and translation invariance") {
  std::mt19937 rng(42);
  for (int i = 0; i < 200; ++i) {
    const Point p = randomPoint(rng), q = randomPoint(rng),
                r = randomPoint(rng);
    const Orient o = orientation(p, q, r);
    const Orient swapped = orientation(p, r, q);
    CHECK(static_cast<int>(o) == -static_cast<int>(swapped));
    const Rat dx = randomRat(rng), dy = randomRat(rng);
    const Point tp{p.x + dx, p.y + dy}, tq{q.x + dx, q.y + dy},
        tr{r.x + dx, r.y + dy};
    CHECK(orientation(tp, tq, tr) == o);
  }
}

TEST_CASE("on_segment handles closed endpoints and rays") {
  const Segment s = Segment::bounded(pt(0, 0), pt(2, 0));
  CHECK(onSegment(pt(1, 0), s));
  CHECK(onSegment(pt(0, 0), s));
  CHECK(onSegment(pt(2, 0), s));
  CHECK_FALSE(onSegment(pt(3, 0), s));
  CHECK_FALSE(onSegment(pt(1, 1), s));

  const Segment r = Segment::ray(pt(0, 0), pt(1, 1));
  CHECK(onSegment(pt(5, 5), r));
  CHECK(onSegment(pt(0, 0), r));
  CHECK_FALSE(onSegment(pt(-1, -1), r));

  const Segment l = Segment::fullLine(pt(0, 0), pt(1, 0));
  CHECK(onSegment(pt(-100, 0), l));
  CHECK_FALSE(onSegment(pt(0, 1), l));

  const Segment d = Segment::point(pt(1, 2));
  CHECK(onSegment(pt(1, 2), d));
  CHECK_FALSE(onSegment(pt(1, 3), d));
}

TEST_CASE("relative interior excludes bounded endpoints only") {
  const Segment s = Segment::bounded(pt(0, 0), pt(2, 0));
  CHECK(inRelativeInterior(pt(1, 0), s));
  CHECK_FALSE(inRelativeInterior(pt(0, 0), s));
  CHECK_FALSE(inRelativeInterior(pt(2, 0), s));

  const Segment r = Segment::ray(pt(0, 0), pt(0, 1));
  CHECK(inRelativeInterior(pt(0, 3), r));
  CHECK_FALSE(inRelativeInterior(pt(0, 0), r));

  CHECK_FALSE(inRelativeInterior(pt(1, 2), Segment::point(pt(1, 2))));
}

TEST_CASE("proper intersection distinguishes crossing from touching") {
  CHECK(properIntersection(Segment::bounded(pt(0, 0), pt(2, 2)),
                           Segment::bounded(pt(0, 2), pt(2, 0))));
  // touching at an endpoint is not proper
  CHECK_FALSE(properIntersection(Segment::bounded(pt(0, 0), pt(1, 1)),
                                 Segment::bounded(pt(1, 1), pt(2, 0))));
  // T-contact: endpoint of one interior to the other is not proper
  CHECK_FALSE(properIntersection(Segment::bounded(pt(0, 0), pt(2, 0)),
                                 Segment::bounded(pt(1, 0), pt(1, 2))));
  // disjoint collinear
  CHECK_FALSE(properIntersection(Segment::bounded(pt(0, 0), pt(1, 0)),
                                 Segment::bounded(pt(2, 0), pt(3, 0))));
  // collinear overlap of positive length is proper
  CHECK(properIntersection(Segment::bounded(pt(0, 0), pt(2, 0)),
                           Segment::bounded(pt(1, 0), pt(3, 0))));
  // collinear end-to-end touch is not
  CHECK_FALSE(properIntersection(Segment::bounded(pt(0, 0), pt(1, 0)),
                                 Segment::bounded(pt(1, 0), pt(2, 0))));
  // ray crossing a segment's interior
  CHECK(properIntersection(Segment::ray(pt(1, -1), pt(1, 1)),
                           Segment::bounded(pt(0, 0), pt(2, 0))));
  // degenerate segments have no interior
  CHECK_FALSE(properIntersection(Segment::point(pt(1, 0)),
                                 Segment::bounded(pt(0, 0), pt(2, 0))));
}

TEST_CASE("segment disjointness is exact") {
  CHECK(segmentsDisjoint(Segment::bounded(pt(0, 0), pt(1, 0)),
                         Segment::bounded(pt(2, 0), pt(3, 0))));
  CHECK_FALSE(segmentsDisjoint(Segment::bounded(pt(0, 0), pt(2, 0)),
                               Segment::bounded(pt(1, 0), pt(3, 0))));
  // sharing a single endpoint is not disjoint
  CHECK_FALSE(segmentsDisjoint(Segment::bounded(pt(0, 0), pt(1, 0)),
                               Segment::bounded(pt(1, 0), pt(1, 5))));
  CHECK(segmentsDisjoint(Segment::bounded(pt(0, 0), pt(1, 1)),
                         Segment::bounded(pt(0, 1), pt(-1, 2))));
  CHECK(segmentsDisjoint(Segment::point(pt(5, 5)),
                         Segment::bounded(pt(0, 0), pt(1, 0))));
  CHECK_FALSE(segmentsDisjoint(Segment::point(pt(1, 0)),
                               Segment::bounded(pt(0, 0), pt(2, 0))));
  // parallel lines never meet
  CHECK(segmentsDisjoint(Segment::bounded(pt(0, 0), pt(4, 0)),
                         Segment::bounded(pt(0, 1), pt(4, 1))));
}

TEST_CASE("proper intersection implies not disjoint") {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    Point a = randomPoint(rng), b = randomPoint(rng);
    Point c = randomPoint(rng), d = randomPoint(rng);
    if (a == b || c == d) continue;
    const Segment s = Segment::bounded(a, b);
    const Segment t = Segment::bounded(c, d);
    if (properIntersection(s, t)) CHECK_FALSE(segmentsDisjoint(s, t));
    if (segmentsDisjoint(s, t)) CHECK_FALSE(properIntersection(s, t));
  }
}

TEST_CASE("line intersection solves exactly") {
  // y = x and y = -x + 1 meet at (1/2, 1/2)
  const Line l1 = Line::throughPoints(pt(0, 0), pt(1, 1));
  const Line l2 = Line::throughPoints(pt(0, 1), pt(1, 0));
  const auto x = lineIntersection(l1, l2);
  REQUIRE(x.has_value());
  CHECK(*x == pt(1, 2, 1, 2));

  // parallel
  const Line l3 = Line::throughPoints(pt(0, 2), pt(1, 3));
  CHECK_FALSE(lineIntersection(l1, l3).has_value());
  // identical lines are reported as having no single intersection
  CHECK_FALSE(lineIntersection(l1, l1).has_value());
}

TEST_CASE("line intersection residual is zero on random pairs") {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    Point a = randomPoint(rng), b = randomPoint(rng);
    Point c = randomPoint(rng), d = randomPoint(rng);
    if (a == b || c == d) continue;
    const Line l = Line::throughPoints(a, b);
    const Line m = Line::throughPoints(c, d);
    const auto x = lineIntersection(l, m);
    if (!x) continue;
    CHECK(l.contains(*x));
    CHECK(m.contains(*x));
  }
}

TEST_CASE("line normalization gives canonical equality") {
  const Line l1 = Line::throughPoints(pt(0, 0), pt(2, 2));
  const Line l2 = Line::throughPoints(pt(5, 5), pt(-3, -3));
  CHECK(l1 == l2);
  CHECK(hashLine(l1) == hashLine(l2));
  const Line v = Line::throughPoints(pt(3, -1), pt(3, 9));
  CHECK(v.vertical());
  CHECK(v.xIntercept() == 3);
  const Line h = Line::throughPoints(pt(0, 4), pt(7, 4));
  CHECK(h.slope() == 0);
  CHECK(Line::fromCoefficients(Rat(2), Rat(-4), Rat(6)) ==
        Line::fromCoefficients(makeRat(-1), Rat(2), Rat(-3)));
}

TEST_CASE("shear is the fixed horizontal map") {
  const Rat top = makeRat(-5, 4);
  CHECK(shear(pt(1, 1), top) == pt(-1, 4, 1, 1));
  CHECK(shear(pt(3, 0), top) == pt(3, 0));
  CHECK(shear(pt(2, -2), makeRat(5, 4)) == pt(-1, 2, -2, 1));
}

TEST_CASE("shear is invertible and preserves collinearity") {
  std::mt19937 rng(13);
  for (int i = 0; i < 200; ++i) {
    const Point p = randomPoint(rng);
    const Rat f = randomRat(rng);
    const Point q = shear(shear(p, f), Rat(-f));
    CHECK(q == p);
    const Point a = randomPoint(rng), b = randomPoint(rng),
                c = randomPoint(rng);
    const bool collinearBefore =
        orientation(a, b, c) == Orient::Collinear;
    const bool collinearAfter =
        orientation(shear(a, f), shear(b, f), shear(c, f)) ==
        Orient::Collinear;
    CHECK(collinearBefore == collinearAfter);
  }
}
