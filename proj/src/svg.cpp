#include "tfl/svg.hpp"

#include <cstdio>
#include <sstream>

namespace tfl {
namespace {

constexpr const char* kFill[3] = {"#4c78a8", "#f58518", "#54a24b"};
constexpr const char* kFrozenFill[3] = {"#2f4b69", "#99530f", "#34652f"};
constexpr const char* kPairStroke[3] = {"#7b3294", "#d7191c", "#1a9641"};  // 01, 02, 12
constexpr double kSize = 512.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// Maps world coordinates in [-extent, extent]^2 to pixels.
struct View {
  double extent;
  double x(double wx) const { return (wx + extent) / (2 * extent) * kSize; }
  double y(double wy) const { return (extent - wy) / (2 * extent) * kSize; }
};

std::string header() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" viewBox=\"0 0 512 512\">\n"
         "<rect width=\"512\" height=\"512\" fill=\"white\"/>\n";
}

void markers_into(std::ostringstream& os, const View& v, const std::vector<Vec2>& markers) {
  for (const Vec2& m : markers) {
    os << "<circle cx=\"" << num(v.x(m.x)) << "\" cy=\"" << num(v.y(m.y))
       << "\" r=\"5\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  }
}

void interfaces_into(std::ostringstream& os, const View& v, const PolyConfig& c, double width) {
  os << "<circle cx=\"" << num(v.x(0)) << "\" cy=\"" << num(v.y(0)) << "\" r=\""
     << num(c.domain_radius() / (2 * v.extent) * kSize) << "\" fill=\"none\" stroke=\"#888\"/>\n";
  for (const Interface& f : c.interfaces()) {
    os << "<polyline fill=\"none\" stroke=\"" << kPairStroke[f.i + f.j - 1] << "\" stroke-width=\"" << num(width)
       << "\" points=\"";
    for (size_t k = 0; k < f.points.size(); ++k) {
      os << (k ? " " : "") << num(v.x(f.points[k].x)) << "," << num(v.y(f.points[k].y));
    }
    os << "\"/>\n";
  }
}

}  // namespace

std::string svg_grid(const LabelGrid& g, const std::vector<Vec2>& markers) {
  std::ostringstream os;
  os << header();
  const double extent = 0.5 * std::max(g.width, g.height) * g.h;
  const View v{extent};
  const double cell = g.h / (2 * extent) * kSize;
  // One rectangle per run of equal cells in a row.
  for (int iy = 0; iy < g.height; ++iy) {
    for (int ix = 0; ix < g.width;) {
      const int c = g.index(ix, iy);
      int end = ix + 1;
      auto key = [&g](int k) { return g.domain[k] ? g.labels[k] + 3 * g.frozen[k] : -1; };
      while (end < g.width && key(g.index(end, iy)) == key(c)) ++end;
      if (g.domain[c]) {
        const Vec2 corner = g.center(ix, iy + 1) - Vec2{0.5 * g.h, 0.5 * g.h};
        os << "<rect x=\"" << num(v.x(corner.x)) << "\" y=\"" << num(v.y(corner.y)) << "\" width=\""
           << num(cell * (end - ix)) << "\" height=\"" << num(cell) << "\" fill=\""
           << (g.frozen[c] ? kFrozenFill : kFill)[g.labels[c]] << "\" shape-rendering=\"crispEdges\"/>\n";
      }
      ix = end;
    }
  }
  markers_into(os, v, markers);
  os << "</svg>\n";
  return os.str();
}

std::string svg_polyconfig(const PolyConfig& c, const std::vector<Vec2>& markers) {
  std::ostringstream os;
  os << header();
  const View v{1.05 * c.domain_radius()};
  for (const BoundaryArc& a : c.boundary_arcs()) {
    // Boundary arcs as thick coloured strokes just outside the circle.
    const double r = 1.02 * c.domain_radius();
    const Vec2 p = polar(r, a.start), q = polar(r, a.end);
    const double rpx = r / (2 * v.extent) * kSize;
    if (a.end - a.start > kTwoPi - 1e-9) {
      os << "<circle cx=\"" << num(v.x(0)) << "\" cy=\"" << num(v.y(0)) << "\" r=\"" << num(rpx) << "\" fill=\"none\" stroke=\""
         << kFill[a.label] << "\" stroke-width=\"6\"/>\n";
      continue;
    }
    // Counter-clockwise in the plane is sweep flag 0 on screen.
    os << "<path fill=\"none\" stroke=\"" << kFill[a.label] << "\" stroke-width=\"6\" d=\"M " << num(v.x(p.x)) << " "
       << num(v.y(p.y)) << " A " << num(rpx) << " " << num(rpx) << " 0 " << (a.end - a.start > kPi ? 1 : 0)
       << " 0 " << num(v.x(q.x)) << " " << num(v.y(q.y)) << "\"/>\n";
  }
  interfaces_into(os, v, c, 2.0);
  markers_into(os, v, markers);
  os << "</svg>\n";
  return os.str();
}

std::string svg_cone(const ConeConfig& c, const PolyConfig* competitor) {
  std::ostringstream os;
  os << header();
  const View v{1.05};
  const double rpx = 1.0 / (2 * v.extent) * kSize;
  for (const Sector& s : c.sectors()) {
    const Vec2 p = polar(1.0, s.start), q = polar(1.0, s.end);
    os << "<path fill=\"" << kFill[s.label] << "\" fill-opacity=\"0.6\" stroke=\"none\" d=\"M " << num(v.x(0)) << " "
       << num(v.y(0)) << " L " << num(v.x(p.x)) << " " << num(v.y(p.y)) << " A " << num(rpx) << " " << num(rpx)
       << " 0 " << (s.opening() > kPi ? 1 : 0) << " 0 " << num(v.x(q.x)) << " " << num(v.y(q.y)) << " Z\"/>\n";
  }
  if (competitor) interfaces_into(os, v, *competitor, 1.5);
  os << "</svg>\n";
  return os.str();
}

}  // namespace tfl
