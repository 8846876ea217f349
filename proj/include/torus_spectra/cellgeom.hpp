#pragma once

#include <vector>

#include "torus_spectra/moduli.hpp"
#include "torus_spectra/quadrature.hpp"

namespace torus {

/// The two affine pieces bounding D_{a,b} from above:
/// y1 on [-x1, x2] and y2 on [x2, x1]. The lower boundary is the polar
/// reflection, and vertical edges sit at x = +-x1.
struct EdgeFunctions {
  double x1 = 0.0, x2 = 0.0;
  double y1_const = 0.0, y1_slope = 0.0;
  double y2_const = 0.0, y2_slope = 0.0;

  double y1(double x) const { return y1_const + y1_slope * x; }
  double y2(double x) const { return y2_const + y2_slope * x; }
};

/// Dirichlet-Voronoi cell of the origin: a cyclic polygon with four vertices
/// when a = 0 and six when a in (0, 1/2], area one, polar symmetric.
struct VoronoiCell {
  TorusParams params;
  std::vector<Vec2> vertices;  // counter-clockwise
  double x1 = 0.0, x2 = 0.0;
  double r1 = 0.0;  // inradius, 1/(2 sqrt b)
  double r2 = 0.0;  // circumradius

  ConvexPolygon polygon() const { return ConvexPolygon(vertices); }
};

EdgeFunctions edge_functions(const TorusParams& p);
VoronoiCell build_cell(const TorusParams& p);

/// Squared geodesic distance on T_{a,b}: minimum over lattice translates
/// after wrapping the difference to the fundamental parallelogram. A 5x5
/// translate window provably contains the minimizer for reduced bases.
double geodesic_dist_sq(const TorusParams& p, const Vec2& x, const Vec2& y);

/// The lattice translate of x lying inside D_{a,b}.
Vec2 wrap_to_cell(const TorusParams& p, const Vec2& x);

/// Center c_{a,b} of the parallelogram representative whose lower-left corner
/// is the origin.
Vec2 parallelogram_center(const TorusParams& p);

namespace detail {
/// Same minimization over a (2w+1)x(2w+1) translate window; the test suite
/// cross-checks the default w = 2 against w = 3.
double geodesic_dist_sq_window(const TorusParams& p, const Vec2& x, const Vec2& y, int window);

/// Cell formulas applied to raw (a, b) without moduli-domain validation; they
/// remain a valid convex polygon slightly past the boundary of U, which the
/// finite-difference stencils rely on.
EdgeFunctions edge_functions_raw(double a, double b);
ConvexPolygon cell_polygon_raw(double a, double b);
}  // namespace detail

}  // namespace torus
