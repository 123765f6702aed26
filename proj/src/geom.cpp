#include "coverlab/geom.hpp"

#include <stdexcept>
#include <utility>

namespace coverlab {
namespace {

// Finite or infinite parameter bound for describing a segment as an interval
// along its supporting line.
struct ParamInterval {
  std::optional<Rat> lo;  // empty means -infinity
  std::optional<Rat> hi;  // empty means +infinity
};

ParamInterval paramInterval(const Line& line, const Segment& s) {
  const Rat pa = lineParameter(line, s.a);
  const Rat pb = lineParameter(line, s.b);
  ParamInterval iv;
  if (pa <= pb) {
    if (!s.unboundedA) iv.lo = pa;
    if (!s.unboundedB) iv.hi = pb;
  } else {
    if (!s.unboundedB) iv.lo = pb;
    if (!s.unboundedA) iv.hi = pa;
  }
  return iv;
}

Line normalizedLine(const Rat& ra, const Rat& rb, const Rat& rc) {
  Int l = lcm(lcm(ra.get_den(), rb.get_den()), rc.get_den());
  Int a = ra.get_num() * (l / ra.get_den());
  Int b = rb.get_num() * (l / rb.get_den());
  Int c = rc.get_num() * (l / rc.get_den());
  Int g = gcd(gcd(a, b), c);
  if (g != 0) {
    a /= g;
    b /= g;
    c /= g;
  }
  const bool flip = a < 0 || (a == 0 && b < 0);
  if (flip) {
    a = -a;
    b = -b;
    c = -c;
  }
  return Line{std::move(a), std::move(b), std::move(c)};
}

}  // namespace

bool lexLess(const Point& a, const Point& b) {
  const int cx = cmp(a.x, b.x);
  if (cx != 0) return cx < 0;
  return a.y < b.y;
}

std::size_t hashPoint(const Point& p) {
  std::size_t h = hashInt(p.x.get_num());
  h = hashCombine(h, hashInt(p.x.get_den()));
  h = hashCombine(h, hashInt(p.y.get_num()));
  h = hashCombine(h, hashInt(p.y.get_den()));
  return h;
}

std::string pointToString(const Point& p) {
  return "(" + ratToString(p.x) + ", " + ratToString(p.y) + ")";
}

Line Line::throughPoints(const Point& p, const Point& q) {
  if (p == q) throw std::invalid_argument("line through coincident points");
  Rat a = p.y - q.y;
  Rat b = q.x - p.x;
  Rat c = p.x * q.y - q.x * p.y;
  return normalizedLine(a, b, c);
}

Line Line::fromCoefficients(const Rat& a, const Rat& b, const Rat& c) {
  if (a == 0 && b == 0)
    throw std::invalid_argument("degenerate line coefficients");
  return normalizedLine(a, b, c);
}

bool Line::contains(const Point& p) const {
  Rat v = Rat(a) * p.x + Rat(b) * p.y + c;
  return v == 0;
}

Rat Line::slope() const {
  if (vertical()) throw std::logic_error("slope of vertical line");
  return makeRat(-a, b);
}

Rat Line::xIntercept() const {
  if (a == 0) throw std::logic_error("x-intercept of horizontal line");
  return makeRat(-c, a);
}

std::size_t hashLine(const Line& l) {
  std::size_t h = hashInt(l.a);
  h = hashCombine(h, hashInt(l.b));
  h = hashCombine(h, hashInt(l.c));
  return h;
}

Segment Segment::bounded(const Point& a, const Point& b) {
  if (a == b)
    throw std::invalid_argument("bounded segment with coincident endpoints");
  return Segment{a, b, false, false};
}

Segment Segment::point(const Point& p) { return Segment{p, p, false, false}; }

Segment Segment::ray(const Point& from, const Point& towards) {
  if (from == towards) throw std::invalid_argument("ray without direction");
  return Segment{from, towards, false, true};
}

Segment Segment::fullLine(const Point& p, const Point& q) {
  if (p == q) throw std::invalid_argument("line without direction");
  return Segment{p, q, true, true};
}

Line Segment::supportingLine() const {
  if (degenerate())
    throw std::logic_error("supporting line of degenerate segment");
  return Line::throughPoints(a, b);
}

Orient orientation(const Point& p, const Point& q, const Point& r) {
  Rat cross = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  const int s = sign(cross);
  if (s > 0) return Orient::CounterClockwise;
  if (s < 0) return Orient::Clockwise;
  return Orient::Collinear;
}

bool onSegment(const Point& p, const Segment& s) {
  if (s.degenerate()) return p == s.a;
  if (orientation(s.a, s.b, p) != Orient::Collinear) return false;
  const Line line = s.supportingLine();
  const ParamInterval iv = paramInterval(line, s);
  const Rat t = lineParameter(line, p);
  if (iv.lo && t < *iv.lo) return false;
  if (iv.hi && t > *iv.hi) return false;
  return true;
}

bool inRelativeInterior(const Point& p, const Segment& s) {
  if (s.degenerate()) return false;
  if (orientation(s.a, s.b, p) != Orient::Collinear) return false;
  const Line line = s.supportingLine();
  const ParamInterval iv = paramInterval(line, s);
  const Rat t = lineParameter(line, p);
  if (iv.lo && t <= *iv.lo) return false;
  if (iv.hi && t >= *iv.hi) return false;
  return true;
}

bool properIntersection(const Segment& s, const Segment& t) {
  if (s.degenerate() || t.degenerate()) return false;
  const Line ls = s.supportingLine();
  const Line lt = t.supportingLine();
  if (ls == lt) {
    const ParamInterval is = paramInterval(ls, s);
    const ParamInterval it = paramInterval(ls, t);
    std::optional<Rat> lo = is.lo;
    if (it.lo && (!lo || *it.lo > *lo)) lo = it.lo;
    std::optional<Rat> hi = is.hi;
    if (it.hi && (!hi || *it.hi < *hi)) hi = it.hi;
    if (lo && hi) {
      if (*lo > *hi) return false;
      if (*lo == *hi) {
        const Point shared = linePointAt(ls, *lo);
        return inRelativeInterior(shared, s) && inRelativeInterior(shared, t);
      }
    }
    return true;  // overlap of positive length, interior to both
  }
  const auto x = lineIntersection(ls, lt);
  if (!x) return false;
  return inRelativeInterior(*x, s) && inRelativeInterior(*x, t);
}

bool segmentsDisjoint(const Segment& s, const Segment& t) {
  if (!s.boundedBoth() || !t.boundedBoth())
    throw std::invalid_argument("segmentsDisjoint requires bounded segments");
  if (s.degenerate()) return !onSegment(s.a, t);
  if (t.degenerate()) return !onSegment(t.a, s);
  const Line ls = s.supportingLine();
  const Line lt = t.supportingLine();
  if (ls == lt) {
    const ParamInterval is = paramInterval(ls, s);
    const ParamInterval it = paramInterval(ls, t);
    return *is.hi < *it.lo || *it.hi < *is.lo;
  }
  const auto x = lineIntersection(ls, lt);
  if (!x) return true;
  return !(onSegment(*x, s) && onSegment(*x, t));
}

std::optional<Point> lineIntersection(const Line& l, const Line& m) {
  Int det = l.a * m.b - m.a * l.b;
  if (det == 0) return std::nullopt;
  Rat x = makeRat(l.b * m.c - m.b * l.c, det);
  Rat y = makeRat(m.a * l.c - l.a * m.c, det);
  return Point{std::move(x), std::move(y)};
}

Rat lineParameter(const Line& line, const Point& p) {
  return line.vertical() ? p.y : p.x;
}

Point linePointAt(const Line& line, const Rat& t) {
  if (line.vertical()) {
    // x = -(b*y + c)/a with b = 0
    Rat x = makeRat(-line.c, line.a);
    return Point{x, t};
  }
  Rat y = line.b == 0 ? Rat(0) : Rat(Rat(-line.a) * t - line.c) / Rat(line.b);
  return Point{t, y};
}

Point shear(const Point& p, const Rat& factor) {
  return Point{p.x + factor * p.y, p.y};
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
  return os << pointToString(p);
}

}  // namespace coverlab
