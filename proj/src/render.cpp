#include "coverlab/render.hpp"

#include <optional>
#include <sstream>
#include <utility>

namespace coverlab {

namespace {

std::string dec(const Rat& v) { return ratToDecimal(v, 9); }

struct Box {
  bool any = false;
  Rat x0, y0, x1, y1;

  void add(const Point& p) {
    if (!any) {
      x0 = x1 = p.x;
      y0 = y1 = p.y;
      any = true;
      return;
    }
    if (p.x < x0) x0 = p.x;
    if (p.x > x1) x1 = p.x;
    if (p.y < y0) y0 = p.y;
    if (p.y > y1) y1 = p.y;
  }
};

// World-to-pixel frame, y flipped.
struct Frame {
  Rat px;   // pixels per world unit
  Rat wx0;  // world left edge
  Rat wy1;  // world top edge

  Rat x(const Rat& wx) const { return (wx - wx0) * px; }
  Rat y(const Rat& wy) const { return (wy1 - wy) * px; }
};

struct ParamRange {
  std::optional<Rat> lo;  // empty: unbounded
  std::optional<Rat> hi;
};

ParamRange segmentRange(const Line& l, const Segment& s) {
  const Rat pa = lineParameter(l, s.a);
  const Rat pb = lineParameter(l, s.b);
  ParamRange r;
  if (pa <= pb) {
    if (!s.unboundedA) r.lo = pa;
    if (!s.unboundedB) r.hi = pb;
  } else {
    if (!s.unboundedB) r.lo = pb;
    if (!s.unboundedA) r.hi = pa;
  }
  return r;
}

// Intersection of a line with an axis-aligned rectangle, as a closed
// parameter interval (lineParameter coordinates), or nothing.
std::optional<std::pair<Rat, Rat>> clipLineToRect(const Line& l, const Rat& x0,
                                                  const Rat& y0, const Rat& x1,
                                                  const Rat& y1) {
  Rat lo, hi;
  if (l.vertical()) {
    // parameter is y; x is fixed at -c/a
    const Rat x = makeRat(-l.c, l.a);
    if (x < x0 || x > x1) return std::nullopt;
    lo = y0;
    hi = y1;
  } else {
    lo = x0;
    hi = x1;
    // y(t) = (-a*t - c)/b must stay within [y0, y1]
    const Rat mu = makeRat(-l.a, l.b);
    const Rat nu = makeRat(-l.c, l.b);
    if (sign(mu) == 0) {
      if (nu < y0 || nu > y1) return std::nullopt;
    } else {
      Rat ta = (y0 - nu) / mu;
      Rat tb = (y1 - nu) / mu;
      if (ta > tb) std::swap(ta, tb);
      if (ta > lo) lo = ta;
      if (tb < hi) hi = tb;
    }
  }
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

void emitLine(std::ostringstream& out, const Frame& f, const Point& a,
              const Point& b, const std::string& cls,
              const std::string& extra = "") {
  out << "  <line class=\"" << cls << "\" x1=\"" << dec(f.x(a.x)) << "\" y1=\""
      << dec(f.y(a.y)) << "\" x2=\"" << dec(f.x(b.x)) << "\" y2=\""
      << dec(f.y(b.y)) << "\"" << extra << "/>\n";
}

void emitCircle(std::ostringstream& out, const Frame& f, const Point& p,
                const std::string& r, const std::string& cls) {
  out << "  <circle class=\"" << cls << "\" cx=\"" << dec(f.x(p.x))
      << "\" cy=\"" << dec(f.y(p.y)) << "\" r=\"" << r << "\"/>\n";
}

}  // namespace

std::string renderSvg(const ReductionInstance& instance,
                      const SegmentCover* cover, const CutSequence* cuts,
                      const RenderSpec& spec) {
  if (sign(spec.scale) <= 0)
    throw std::invalid_argument("render scale must be positive");
  if (cover && spec.cover)
    for (const Segment& s : cover->segments) {
      if (!s.boundedBoth())
        throw InconsistentInputs("cover segments must be bounded");
      bool hits = false;
      for (const TaggedPoint& tp : instance.points)
        if (onSegment(tp.p, s)) {
          hits = true;
          break;
        }
      if (!hits)
        throw InconsistentInputs(
            "cover segment passes through no instance point");
    }
  if (cuts && spec.cuts)
    for (const Segment& c : cuts->cuts)
      if (c.degenerate())
        throw InconsistentInputs("cut sequences may not contain point cuts");

  // canvas: bounding box of everything bounded that will be drawn
  Box box;
  for (const TaggedPoint& tp : instance.points) box.add(tp.p);
  if (spec.drawing)
    for (const VariableGadget& g : instance.gadgets) {
      for (const GadgetLine& gl : g.posLines) {
        box.add(gl.drawn.a);
        box.add(gl.drawn.b);
      }
      for (const GadgetLine& gl : g.negLines) {
        box.add(gl.drawn.a);
        box.add(gl.drawn.b);
      }
    }
  if (cover && spec.cover)
    for (const Segment& s : cover->segments) {
      box.add(s.a);
      box.add(s.b);
    }
  if (cuts && spec.cuts)
    for (const Segment& c : cuts->cuts) {
      if (!c.unboundedA) box.add(c.a);
      if (!c.unboundedB) box.add(c.b);
    }
  if (!box.any) {
    box.add(Point{Rat(0), Rat(0)});
  }
  if (box.x0 == box.x1) {
    box.x0 -= 1;
    box.x1 += 1;
  }
  if (box.y0 == box.y1) {
    box.y0 -= 1;
    box.y1 += 1;
  }
  const Rat marginX = (box.x1 - box.x0) / 10;
  const Rat marginY = (box.y1 - box.y0) / 10;
  const Rat wx0 = box.x0 - marginX, wx1 = box.x1 + marginX;
  const Rat wy0 = box.y0 - marginY, wy1 = box.y1 + marginY;

  Frame f{spec.scale * 100, wx0, wy1};
  const Rat width = f.x(wx1);
  const Rat height = f.y(wy0);

  const int n = instance.formula.variableCount;
  const Rat insetSide(220), insetGap(12);
  Rat totalWidth = width, totalHeight = height;
  if (spec.gadgetZoom) {
    const Rat row = Rat(n) * (insetSide + insetGap) + insetGap;
    if (row > totalWidth) totalWidth = row;
    totalHeight += insetSide + 2 * insetGap;
  }

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << dec(totalWidth) << "\" height=\"" << dec(totalHeight)
      << "\" viewBox=\"0 0 " << dec(totalWidth) << " " << dec(totalHeight)
      << "\">\n";
  out << " <defs>\n"
         "  <marker id=\"arrow\" viewBox=\"0 0 8 8\" refX=\"7\" refY=\"4\" "
         "markerWidth=\"8\" markerHeight=\"8\" orient=\"auto\">\n"
         "   <path d=\"M0,0 L8,4 L0,8 z\" fill=\"#b22222\"/>\n"
         "  </marker>\n"
         " </defs>\n";
  out << " <style>\n"
         "  .drawing { stroke: #b0b0b0; stroke-width: 1; }\n"
         "  .cover { stroke: #2ca02c; stroke-width: 2.5; }\n"
         "  .cut { stroke: #b22222; stroke-width: 1.5; }\n"
         "  .clause { fill: #d62728; }\n"
         "  .gadget { fill: #1f77b4; }\n"
         "  .apex-pos { fill: #1f77b4; }\n"
         "  .apex-neg { fill: #ff7f0e; }\n"
         "  .zoom-line { stroke: #707070; stroke-width: 1; }\n"
         "  .zoom-box { fill: none; stroke: #303030; stroke-width: 1; }\n"
         "  text { font-family: monospace; font-size: 12px; }\n"
         " </style>\n";
  out << " <rect width=\"" << dec(totalWidth) << "\" height=\""
      << dec(totalHeight) << "\" fill=\"white\"/>\n";

  if (spec.drawing) {
    out << " <g class=\"layer-drawing\">\n";
    for (const VariableGadget& g : instance.gadgets) {
      for (const GadgetLine& gl : g.posLines)
        emitLine(out, f, gl.drawn.a, gl.drawn.b, "drawing");
      for (const GadgetLine& gl : g.negLines)
        emitLine(out, f, gl.drawn.a, gl.drawn.b, "drawing");
    }
    out << " </g>\n";
  }

  if (cover && spec.cover) {
    out << " <g class=\"layer-cover\">\n";
    for (const Segment& s : cover->segments) {
      if (s.degenerate()) {
        emitCircle(out, f, s.a, "3", "cover");
        continue;
      }
      emitLine(out, f, s.a, s.b, "cover");
    }
    out << " </g>\n";
  }

  if (cuts && spec.cuts) {
    out << " <g class=\"layer-cuts\">\n";
    for (std::size_t i = 0; i < cuts->cuts.size(); ++i) {
      const Segment& c = cuts->cuts[i];
      const Line l = Line::throughPoints(c.a, c.b);
      const auto window = clipLineToRect(l, wx0, wy0, wx1, wy1);
      if (!window) continue;
      const ParamRange own = segmentRange(l, c);
      Rat lo = window->first, hi = window->second;
      bool arrowLo = true, arrowHi = true;
      if (own.lo && *own.lo > lo) {
        lo = *own.lo;
        arrowLo = false;
      } else if (own.lo) {
        arrowLo = false;  // bounded end already inside the window
      }
      if (own.hi && *own.hi < hi) {
        hi = *own.hi;
        arrowHi = false;
      } else if (own.hi) {
        arrowHi = false;
      }
      if (lo > hi) continue;
      const Point a = linePointAt(l, lo);
      const Point b = linePointAt(l, hi);
      std::string markers;
      if (arrowLo) markers += " marker-start=\"url(#arrow)\"";
      if (arrowHi) markers += " marker-end=\"url(#arrow)\"";
      emitLine(out, f, a, b, "cut", markers);
      if (spec.labelCuts) {
        const Point mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
        out << "  <text x=\"" << dec(f.x(mid.x) + 4) << "\" y=\""
            << dec(f.y(mid.y) - 4) << "\">" << (i + 1) << "</text>\n";
      }
    }
    out << " </g>\n";
  }

  if (spec.points) {
    out << " <g class=\"layer-points\">\n";
    for (const TaggedPoint& tp : instance.points)
      emitCircle(out, f, tp.p, tp.isClausePoint ? "3.5" : "2",
                 tp.isClausePoint ? "clause" : "gadget");
    out << " </g>\n";
  }

  if (spec.gadgetZoom) {
    out << " <g class=\"layer-gadget-zoom\">\n";
    const Rat d = instance.delta;
    for (int v = 0; v < n; ++v) {
      const VariableGadget& g = instance.gadgets[v];
      const Rat cx(g.variable);
      const Rat zx0 = cx - 5 * d, zx1 = cx + 2 * d;
      const Rat zy0 = -7 * d, zy1 = 7 * d;
      const Rat ox = insetGap + Rat(v) * (insetSide + insetGap);
      const Rat oy = height + insetGap;
      // inset frame: world zoom window -> [ox, ox+side] x [oy, oy+side]
      Frame zf{insetSide / (zx1 - zx0), zx0, zy1};
      const Rat sy = insetSide / (zy1 - zy0);
      // keep x and y scales separate: the window is not square
      auto zx = [&](const Rat& wx) -> Rat { return ox + (wx - zx0) * zf.px; };
      auto zy = [&](const Rat& wy) -> Rat { return oy + (zy1 - wy) * sy; };
      out << "  <rect class=\"zoom-box\" x=\"" << dec(ox) << "\" y=\""
          << dec(oy) << "\" width=\"" << dec(insetSide) << "\" height=\""
          << dec(insetSide) << "\"/>\n";
      out << "  <text x=\"" << dec(ox + 4) << "\" y=\"" << dec(oy + 14)
          << "\">v" << g.variable << "</text>\n";
      auto zoomLine = [&](const GadgetLine& gl) {
        const auto clip = clipLineToRect(gl.line, zx0, zy0, zx1, zy1);
        if (!clip) return;
        const Point a = linePointAt(gl.line, clip->first);
        const Point b = linePointAt(gl.line, clip->second);
        out << "  <line class=\"zoom-line\" x1=\"" << dec(zx(a.x))
            << "\" y1=\"" << dec(zy(a.y)) << "\" x2=\"" << dec(zx(b.x))
            << "\" y2=\"" << dec(zy(b.y)) << "\"/>\n";
      };
      for (const GadgetLine& gl : g.posLines) zoomLine(gl);
      for (const GadgetLine& gl : g.negLines) zoomLine(gl);
      for (const auto& row : g.crossings)
        for (const Point& p : row)
          out << "  <circle class=\"gadget\" cx=\"" << dec(zx(p.x))
              << "\" cy=\"" << dec(zy(p.y)) << "\" r=\"2\"/>\n";
      out << "  <circle class=\"apex-pos\" cx=\"" << dec(zx(g.posApex.x))
          << "\" cy=\"" << dec(zy(g.posApex.y)) << "\" r=\"3\"/>\n";
      out << "  <circle class=\"apex-neg\" cx=\"" << dec(zx(g.negApex.x))
          << "\" cy=\"" << dec(zy(g.negApex.y)) << "\" r=\"3\"/>\n";
    }
    out << " </g>\n";
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace coverlab
