#pragma once

#include <functional>
#include <vector>

#include "torus_spectra/types.hpp"

namespace torus {

/// Tolerances and limits governing every integral the library reports.
/// max_regions bounds the number of live subdivision cells; discontinuous
/// integrands at tolerances they cannot reach stop there with converged=false
/// instead of refining without bound.
struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_depth = 30;
  int rule_order = 7;
  long max_regions = 1'500'000;
};

/// Value plus an error estimate. `converged` is false when the subdivision
/// depth limit was hit before the tolerance target; the value is still the
/// best available estimate.
struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

/// Counter-clockwise convex polygon. Validated on construction: at least
/// three vertices, nonzero area, every turn left (collinear edges allowed,
/// so "false vertices" are fine).
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return verts_; }
  std::size_t size() const { return verts_.size(); }
  double area() const { return area_; }
  Vec2 centroid() const { return centroid_; }
  bool contains(const Vec2& p, double tol = 1e-12) const;

 private:
  std::vector<Vec2> verts_;
  double area_ = 0.0;
  Vec2 centroid_ = Vec2::Zero();
};

/// Adaptive cubature over a convex polygon: fan triangulation from the
/// centroid, a symmetric triangle rule per cell with 4-way subdivision of the
/// worst cell until the summed error estimate meets the tolerance.
/// Deterministic for a given config. Throws NonFiniteIntegrandError with the
/// offending point if g evaluates non-finite.
IntegralResult integrate_polygon(const ConvexPolygon& poly,
                                 const std::function<double(const Vec2&)>& g,
                                 const QuadratureConfig& cfg = {});

/// Adaptive Gauss-Kronrod (7,15) on [lo, hi]. Exact for polynomials well past
/// the configured rule order on a single panel.
IntegralResult integrate_1d(double lo, double hi, const std::function<double(double)>& g,
                            const QuadratureConfig& cfg = {});

}  // namespace torus
