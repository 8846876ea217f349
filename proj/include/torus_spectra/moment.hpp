#pragma once

#include <functional>
#include <random>
#include <vector>

#include "torus_spectra/quadrature.hpp"

namespace torus {

/// Radial profile for the moment suite, evaluated at DISTANCE (the operator
/// kernels act on squared distance; the two conventions are never mixed).
using RadialProfile = std::function<double(double)>;

struct Disc {
  double r = 1.0;  // centered at the origin
};

/// Circular segment of the disc cut off by the chord x = h, h in [-r, r].
struct CircularSegment {
  Disc disc;
  double h = 0.0;  // signed chord offset; h = r is the empty segment
  double s = 0.0;  // cached area, consistent with h
};

double segment_area(const Disc& d, double h);

/// Inverts the chord-offset/area relation by bisection to 1e-13.
/// Throws AreaOutOfRangeError unless 0 <= s <= pi r^2.
CircularSegment segment_from_area(const Disc& d, double s);

/// omega(s): the moment of the area-s segment, computed by the radial-chord
/// reduction  int f(rho) rho alpha(rho) drho  with alpha the angular width of
/// the ring of radius rho inside the segment.
double segment_moment(const Disc& d, double s, const RadialProfile& f,
                      const QuadratureConfig& cfg = {});

/// Discrete convexity of omega on a uniform area grid over [0, |K|/2).
struct ConvexityReport {
  struct Violation {
    double s0, s1, s2;
    double second_difference;
  };
  bool ok = false;
  double min_second_difference = 0.0;
  std::vector<Violation> violations;
};
ConvexityReport moment_convexity_check(const Disc& d, const RadialProfile& f, int n_samples,
                                       const QuadratureConfig& cfg = {});

/// The two-point rearrangement bound: the region R enclosed by the radial
/// segments through a_pt and b_pt, the chord between them, and the boundary
/// arc has moment at least omega(|R|). Throws DegenerateRegionError when the
/// two points pinch R (collinear with the center).
struct RearrangementResult {
  double region_area = 0.0;
  double region_moment = 0.0;      // integral of f over R
  double rearranged_moment = 0.0;  // omega(|R|)
  bool ok = false;
};
RearrangementResult segment_rearrangement_check(const Disc& d, const Vec2& a_pt, const Vec2& b_pt,
                                                const RadialProfile& f,
                                                const QuadratureConfig& cfg = {});

/// Voronoi partition of a convex polygon by half-plane clipping against every
/// site pair. Sites outside the domain are projected onto it first; sites
/// closer than 1e-9 raise DuplicateSitesError.
struct ClippedVoronoi {
  ConvexPolygon domain;
  std::vector<Vec2> sites;
  std::vector<ConvexPolygon> cells;
  std::vector<int> vertex_counts;  // distinct corners per cell (1e-9 merge)
};
ClippedVoronoi clipped_voronoi(const ConvexPolygon& domain, std::vector<Vec2> sites);

/// Total Voronoi vertex count against the 6n bound. The domain must be a
/// hexagon (at most six outer vertices).
struct VertexCountResult {
  long total = 0;
  long bound = 0;
  bool ok = false;
};
VertexCountResult vertex_count_check(const ClippedVoronoi& v);

struct MomentComparison {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool ok = false;
};

/// Fejes Toth Moment Theorem: the nearest-site moment over a convex hexagon
/// is at most n times the centered moment of the regular hexagon of area
/// |C|/n.
MomentComparison moment_theorem_check(const ConvexPolygon& hexagon, const std::vector<Vec2>& sites,
                                      const RadialProfile& f, const QuadratureConfig& cfg = {});

/// Fejes Toth Moment Lemma: among convex n-gons of fixed area the centered
/// regular one maximizes the moment. When the polygon misses the origin it is
/// translated toward it first unless translate_policy is false, in which case
/// OriginOutsideError is thrown.
MomentComparison moment_lemma_check(const ConvexPolygon& poly, const RadialProfile& f,
                                    const QuadratureConfig& cfg = {}, bool translate_policy = true);

ConvexPolygon regular_polygon(int n, double area, double phase = 0.0);

/// Star-shaped sampling (sorted random angles, random radii) followed by a
/// convex hull; retries until the hull has exactly n vertices.
ConvexPolygon random_convex_polygon(std::mt19937_64& rng, int n, double radius_lo = 0.5,
                                    double radius_hi = 1.5);

/// Uniform rejection sampling inside the polygon with a minimum pairwise
/// separation.
std::vector<Vec2> random_sites_in_polygon(std::mt19937_64& rng, const ConvexPolygon& poly, int n,
                                          double min_separation = 1e-3);

}  // namespace torus
