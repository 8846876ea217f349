#include "torus_spectra/cellgeom.hpp"

#include <cmath>
#include <limits>

namespace torus {

namespace detail {

EdgeFunctions edge_functions_raw(double a, double b) {
  const double sb = std::sqrt(b);
  EdgeFunctions e;
  e.x1 = 1.0 / (2.0 * sb);
  e.x2 = (a - 0.5) / sb;
  e.y1_const = ((1.0 - a) * (1.0 - a) / b + b) / (2.0 * sb);
  e.y1_slope = (1.0 - a) / b;
  e.y2_const = (a * a / b + b) / (2.0 * sb);
  e.y2_slope = -a / b;
  return e;
}

namespace {

std::vector<Vec2> cell_vertices(const EdgeFunctions& e) {
  const Vec2 right(e.x1, e.y2(e.x1));
  const Vec2 top(e.x2, e.y2(e.x2));
  const Vec2 left(-e.x1, e.y1(-e.x1));
  if ((top - left).norm() < 1e-12) {
    // a = 0: the hexagon degenerates to a rectangle
    return {right, top, -right, -top};
  }
  return {right, top, left, -right, -top, -left};
}

}  // namespace

ConvexPolygon cell_polygon_raw(double a, double b) {
  return ConvexPolygon(cell_vertices(edge_functions_raw(a, b)));
}

}  // namespace detail

EdgeFunctions edge_functions(const TorusParams& p) { return detail::edge_functions_raw(p.a, p.b); }

VoronoiCell build_cell(const TorusParams& p) {
  const EdgeFunctions e = edge_functions(p);
  VoronoiCell cell{p, detail::cell_vertices(e), e.x1, e.x2, 0.0, 0.0};
  const double a = p.a, b = p.b;
  cell.r1 = 1.0 / (2.0 * std::sqrt(b));
  cell.r2 = std::sqrt((a * a + b * b) * ((a - 1.0) * (a - 1.0) + b * b) / (4.0 * b * b * b));
  return cell;
}

namespace detail {

double geodesic_dist_sq_window(const TorusParams& p, const Vec2& x, const Vec2& y, int window) {
  const Mat2 B = canonical_basis(p);
  const Mat2 Binv = B.inverse();
  Vec2 delta = x - y;
  const Vec2 frac = Binv * delta;
  delta -= B * Vec2(std::round(frac.x()), std::round(frac.y()));
  double best = std::numeric_limits<double>::infinity();
  for (int i = -window; i <= window; ++i)
    for (int j = -window; j <= window; ++j) best = std::min(best, (delta - B * Vec2(i, j)).squaredNorm());
  return best;
}

}  // namespace detail

double geodesic_dist_sq(const TorusParams& p, const Vec2& x, const Vec2& y) {
  return detail::geodesic_dist_sq_window(p, x, y, 2);
}

Vec2 wrap_to_cell(const TorusParams& p, const Vec2& x) {
  const Mat2 B = canonical_basis(p);
  const Mat2 Binv = B.inverse();
  Vec2 delta = x;
  const Vec2 frac = Binv * delta;
  delta -= B * Vec2(std::round(frac.x()), std::round(frac.y()));
  double best = std::numeric_limits<double>::infinity();
  Vec2 rep = delta;
  for (int i = -2; i <= 2; ++i) {
    for (int j = -2; j <= 2; ++j) {
      const Vec2 cand = delta - B * Vec2(i, j);
      const double d = cand.squaredNorm();
      if (d < best) {
        best = d;
        rep = cand;
      }
    }
  }
  return rep;
}

Vec2 parallelogram_center(const TorusParams& p) {
  const double sb = std::sqrt(p.b);
  return {(p.a + 1.0) / (2.0 * sb), 1.0 / (2.0 * sb)};
}

}  // namespace torus
