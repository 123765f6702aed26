#pragma once

#include <optional>
#include <ostream>

#include "coverlab/rational.hpp"

namespace coverlab {

struct Point {
  Rat x;
  Rat y;

  bool operator==(const Point& other) const {
    return x == other.x && y == other.y;
  }
  bool operator!=(const Point& other) const { return !(*this == other); }
};

// Lexicographic (x, then y); the canonical order used for witnesses and for
// sorting collinear points along non-vertical lines.
bool lexLess(const Point& a, const Point& b);

std::size_t hashPoint(const Point& p);
std::string pointToString(const Point& p);

// a*x + b*y + c = 0 with integer coefficients, gcd(a, b, c) = 1, and the
// first nonzero of (a, b) positive. Two Lines are equal as sets of points
// iff their triples are identical.
struct Line {
  Int a;
  Int b;
  Int c;

  static Line throughPoints(const Point& p, const Point& q);
  static Line fromCoefficients(const Rat& a, const Rat& b, const Rat& c);

  bool contains(const Point& p) const;
  bool vertical() const { return b == 0; }
  // Slope as a rational; must not be called on vertical lines.
  Rat slope() const;
  // x at y = 0; must not be called on horizontal lines.
  Rat xIntercept() const;

  bool operator==(const Line& other) const {
    return a == other.a && b == other.b && c == other.c;
  }
};

std::size_t hashLine(const Line& l);

// Closed segment from a to b. An end marked unbounded turns the segment into
// a ray (or a full line when both are set): the endpoint then only anchors
// the supporting line and the segment extends past it through the opposite
// endpoint's direction reversed. Degenerate point-segments (a == b, both
// bounded) are allowed; they have no supporting line and no interior.
struct Segment {
  Point a;
  Point b;
  bool unboundedA = false;
  bool unboundedB = false;

  static Segment bounded(const Point& a, const Point& b);
  static Segment point(const Point& p);
  // Ray anchored at `from`, extending through `towards` and beyond.
  static Segment ray(const Point& from, const Point& towards);
  static Segment fullLine(const Point& p, const Point& q);

  bool degenerate() const { return a == b && !unboundedA && !unboundedB; }
  bool boundedBoth() const { return !unboundedA && !unboundedB; }
  Line supportingLine() const;  // undefined on degenerate segments

  bool operator==(const Segment& other) const {
    return a == other.a && b == other.b && unboundedA == other.unboundedA &&
           unboundedB == other.unboundedB;
  }
};

enum class Orient { Clockwise = -1, Collinear = 0, CounterClockwise = 1 };

Orient orientation(const Point& p, const Point& q, const Point& r);

// Closed membership: endpoints included, unbounded ends extend forever.
bool onSegment(const Point& p, const Segment& s);

// Membership in the relative interior: excludes bounded endpoints. A
// degenerate segment has an empty relative interior.
bool inRelativeInterior(const Point& p, const Segment& s);

// True iff the segments share a point interior to both. Collinear overlap of
// positive length counts (it contains points interior to both); touching at
// an endpoint does not.
bool properIntersection(const Segment& s, const Segment& t);

// True iff the closed segments share no point at all. Both must be bounded.
bool segmentsDisjoint(const Segment& s, const Segment& t);

std::optional<Point> lineIntersection(const Line& l, const Line& m);

// Coordinate of a point along a line: x for non-vertical lines, y otherwise.
// Monotone along the line, so it orders collinear points. The point is
// assumed to lie on the line.
Rat lineParameter(const Line& line, const Point& p);

// Inverse of lineParameter: the point of `line` at parameter t.
Point linePointAt(const Line& line, const Rat& t);

// (x, y) -> (x + factor*y, y)
Point shear(const Point& p, const Rat& factor);

std::ostream& operator<<(std::ostream& os, const Point& p);

}  // namespace coverlab
