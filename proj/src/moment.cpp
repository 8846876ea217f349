#include "torus_spectra/moment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace torus {

namespace {

double clamp(double x, double lo, double hi) { return std::min(hi, std::max(lo, x)); }

Vec2 closest_point_on_segment(const Vec2& p, const Vec2& q, const Vec2& x) {
  const Vec2 d = q - p;
  const double len_sq = d.squaredNorm();
  if (len_sq == 0.0) return p;
  const double t = clamp((x - p).dot(d) / len_sq, 0.0, 1.0);
  return p + t * d;
}

Vec2 project_onto_polygon(const ConvexPolygon& poly, const Vec2& x) {
  if (poly.contains(x)) return x;
  const auto& v = poly.vertices();
  double best = std::numeric_limits<double>::infinity();
  Vec2 out = v[0];
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 c = closest_point_on_segment(v[i], v[(i + 1) % v.size()], x);
    const double d = (c - x).squaredNorm();
    if (d < best) {
      best = d;
      out = c;
    }
  }
  return out;
}

// Sutherland-Hodgman clip against the half-plane (x - mid).dot(dir) <= 0.
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Vec2& mid, const Vec2& dir) {
  std::vector<Vec2> out;
  out.reserve(poly.size() + 1);
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& cur = poly[i];
    const Vec2& nxt = poly[(i + 1) % n];
    const double s_cur = (cur - mid).dot(dir);
    const double s_nxt = (nxt - mid).dot(dir);
    if (s_cur <= 0.0) out.push_back(cur);
    if ((s_cur < 0.0 && s_nxt > 0.0) || (s_cur > 0.0 && s_nxt < 0.0)) {
      const double t = s_cur / (s_cur - s_nxt);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

std::vector<Vec2> dedup_ring(const std::vector<Vec2>& ring, double tol) {
  std::vector<Vec2> out;
  for (const Vec2& p : ring) {
    if (out.empty() || (p - out.back()).norm() > tol) out.push_back(p);
  }
  while (out.size() > 1 && (out.front() - out.back()).norm() <= tol) out.pop_back();
  return out;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& p, const Vec2& q) {
    return p.x() != q.x() ? p.x() < q.x() : p.y() < q.y();
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& p, const Vec2& q) { return (p - q).norm() < 1e-12; }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  auto cross = [](const Vec2& o, const Vec2& p, const Vec2& q) {
    return (p.x() - o.x()) * (q.y() - o.y()) - (p.y() - o.y()) * (q.x() - o.x());
  };
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double radial_moment(const RadialProfile& f, double lo, double hi, const QuadratureConfig& cfg) {
  return integrate_1d(lo, hi, [&](double rho) { return f(rho) * rho; }, cfg).value;
}

}  // namespace

double segment_area(const Disc& d, double h) {
  const double r = d.r;
  const double c = clamp(h / r, -1.0, 1.0);
  return r * r * std::acos(c) - h * std::sqrt(std::max(0.0, r * r - h * h));
}

CircularSegment segment_from_area(const Disc& d, double s) {
  if (!(d.r > 0.0)) throw BadParameterError("disc radius must be positive");
  const double full = M_PI * d.r * d.r;
  const double slack = 1e-12 * std::max(1.0, full);
  if (s < -slack || s > full + slack) throw AreaOutOfRangeError("segment area outside [0, disc area]");
  s = clamp(s, 0.0, full);
  if (s == 0.0) return {d, d.r, 0.0};
  if (s == full) return {d, -d.r, full};

  double lo = -d.r, hi = d.r;  // area decreases from pi r^2 to 0 as h rises
  for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (segment_area(d, mid) > s ? lo : hi) = mid;
  }
  return {d, 0.5 * (lo + hi), s};
}

double segment_moment(const Disc& d, double s, const RadialProfile& f,
                      const QuadratureConfig& cfg) {
  const CircularSegment seg = segment_from_area(d, s);
  const double r = d.r, h = seg.h;
  if (h >= r) return 0.0;
  auto ring = [&](double rho) {
    const double c = clamp(h / rho, -1.0, 1.0);
    return f(rho) * rho * 2.0 * std::acos(c);
  };
  if (h >= 0.0) return integrate_1d(h, r, ring, cfg).value;
  const double inner =
      2.0 * M_PI * radial_moment(f, 0.0, -h, cfg);  // rings fully inside the segment
  return inner + integrate_1d(-h, r, ring, cfg).value;
}

ConvexityReport moment_convexity_check(const Disc& d, const RadialProfile& f, int n_samples,
                                       const QuadratureConfig& cfg) {
  if (n_samples < 3) throw BadParameterError("convexity check needs at least 3 samples");
  const double half = 0.5 * M_PI * d.r * d.r;
  const double delta = half / n_samples;  // grid stays inside [0, |K|/2)
  std::vector<double> omega(n_samples);
  for (int i = 0; i < n_samples; ++i) omega[i] = segment_moment(d, delta * i, f, cfg);

  ConvexityReport rep;
  rep.min_second_difference = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < n_samples; ++i) {
    const double d2 = omega[i - 1] - 2.0 * omega[i] + omega[i + 1];
    rep.min_second_difference = std::min(rep.min_second_difference, d2);
    if (d2 < -1e-9) rep.violations.push_back({delta * (i - 1), delta * i, delta * (i + 1), d2});
  }
  rep.ok = rep.violations.empty();
  return rep;
}

RearrangementResult segment_rearrangement_check(const Disc& d, const Vec2& a_pt, const Vec2& b_pt,
                                                const RadialProfile& f,
                                                const QuadratureConfig& cfg) {
  const double r = d.r;
  if (a_pt.norm() > r * (1.0 + 1e-12) || b_pt.norm() > r * (1.0 + 1e-12))
    throw BadParameterError("rearrangement points must lie inside the disc");
  const double ra = a_pt.norm(), rb = b_pt.norm();
  if (ra < 1e-12 || rb < 1e-12)
    throw DegenerateRegionError("a point at the center leaves no enclosed region");
  const double cross = a_pt.x() * b_pt.y() - a_pt.y() * b_pt.x();
  if (std::abs(cross) < 1e-12 * ra * rb)
    throw DegenerateRegionError("center and both points are collinear; the region is pinched");

  const double dtheta = std::atan2(std::abs(cross), a_pt.dot(b_pt));
  const double sector_area = 0.5 * r * r * dtheta;
  const double sector_moment = dtheta * radial_moment(f, 0.0, r, cfg);

  const ConvexPolygon triangle(cross > 0.0 ? std::vector<Vec2>{Vec2::Zero(), a_pt, b_pt}
                                           : std::vector<Vec2>{Vec2::Zero(), b_pt, a_pt});
  const double tri_moment =
      integrate_polygon(triangle, [&](const Vec2& x) { return f(x.norm()); }, cfg).value;

  RearrangementResult rep;
  rep.region_area = sector_area - triangle.area();
  rep.region_moment = sector_moment - tri_moment;
  rep.rearranged_moment = segment_moment(d, rep.region_area, f, cfg);
  rep.ok = rep.rearranged_moment <= rep.region_moment + 1e-9;
  return rep;
}

ClippedVoronoi clipped_voronoi(const ConvexPolygon& domain, std::vector<Vec2> sites) {
  if (sites.empty()) throw BadParameterError("clipped Voronoi needs at least one site");
  for (Vec2& s : sites) s = project_onto_polygon(domain, s);
  for (std::size_t i = 0; i < sites.size(); ++i)
    for (std::size_t j = i + 1; j < sites.size(); ++j)
      if ((sites[i] - sites[j]).norm() <= 1e-9)
        throw DuplicateSitesError("two sites coincide within 1e-9");

  std::vector<ConvexPolygon> cells;
  std::vector<int> counts;
  cells.reserve(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    std::vector<Vec2> verts = domain.vertices();
    for (std::size_t j = 0; j < sites.size() && !verts.empty(); ++j) {
      if (j == i) continue;
      verts = clip_halfplane(verts, 0.5 * (sites[i] + sites[j]), sites[j] - sites[i]);
    }
    verts = dedup_ring(verts, 1e-12);
    if (verts.size() < 3) throw Error("a Voronoi cell degenerated during clipping");
    cells.emplace_back(verts);
    counts.push_back(static_cast<int>(dedup_ring(verts, 1e-9).size()));
  }
  return {domain, std::move(sites), std::move(cells), std::move(counts)};
}

VertexCountResult vertex_count_check(const ClippedVoronoi& v) {
  if (v.domain.size() > 6) throw DomainError("the vertex-count bound is stated for hexagons");
  VertexCountResult out;
  for (int c : v.vertex_counts) out.total += c;
  out.bound = 6 * static_cast<long>(v.sites.size());
  out.ok = out.total <= out.bound;
  return out;
}

MomentComparison moment_theorem_check(const ConvexPolygon& hexagon, const std::vector<Vec2>& sites,
                                      const RadialProfile& f, const QuadratureConfig& cfg) {
  if (hexagon.size() > 6) throw DomainError("the moment theorem is stated for convex hexagons");
  const ClippedVoronoi cv = clipped_voronoi(hexagon, sites);

  double lhs = 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i < cv.cells.size(); ++i) {
    const Vec2 site = cv.sites[i];
    const IntegralResult part =
        integrate_polygon(cv.cells[i], [&](const Vec2& x) { return f((x - site).norm()); }, cfg);
    lhs += part.value;
    err += part.error_estimate;
  }

  const double n = static_cast<double>(sites.size());
  const ConvexPolygon sigma = regular_polygon(6, hexagon.area() / n);
  const IntegralResult ref =
      integrate_polygon(sigma, [&](const Vec2& x) { return f(x.norm()); }, cfg);
  const double rhs = n * ref.value;
  err += n * ref.error_estimate;

  MomentComparison out{lhs, rhs, rhs - lhs, false};
  out.ok = lhs <= rhs + 1e-9 + err;
  return out;
}

MomentComparison moment_lemma_check(const ConvexPolygon& poly, const RadialProfile& f,
                                    const QuadratureConfig& cfg, bool translate_policy) {
  const ConvexPolygon* domain = &poly;
  ConvexPolygon translated = poly;
  if (!poly.contains(Vec2::Zero())) {
    if (!translate_policy) throw OriginOutsideError("polygon does not contain the origin");
    const Vec2 q = project_onto_polygon(poly, Vec2::Zero());
    std::vector<Vec2> verts = poly.vertices();
    for (Vec2& v : verts) v -= q;
    translated = ConvexPolygon(verts);
    domain = &translated;
  }

  const IntegralResult lhs =
      integrate_polygon(*domain, [&](const Vec2& x) { return f(x.norm()); }, cfg);
  const ConvexPolygon sigma = regular_polygon(static_cast<int>(poly.size()), poly.area());
  const IntegralResult rhs =
      integrate_polygon(sigma, [&](const Vec2& x) { return f(x.norm()); }, cfg);

  MomentComparison out{lhs.value, rhs.value, rhs.value - lhs.value, false};
  out.ok = lhs.value <= rhs.value + 1e-9 + lhs.error_estimate + rhs.error_estimate;
  return out;
}

ConvexPolygon regular_polygon(int n, double area, double phase) {
  if (n < 3) throw BadParameterError("regular polygon needs at least 3 vertices");
  if (!(area > 0.0)) throw BadParameterError("regular polygon needs positive area");
  const double R = std::sqrt(2.0 * area / (n * std::sin(2.0 * M_PI / n)));
  std::vector<Vec2> verts;
  verts.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double th = phase + 2.0 * M_PI * k / n;
    verts.emplace_back(R * std::cos(th), R * std::sin(th));
  }
  return ConvexPolygon(verts);
}

ConvexPolygon random_convex_polygon(std::mt19937_64& rng, int n, double radius_lo,
                                    double radius_hi) {
  if (n < 3) throw BadParameterError("random polygon needs at least 3 vertices");
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  const double mid = 0.5 * (radius_lo + radius_hi);
  const double half_band = 0.5 * (radius_hi - radius_lo);
  for (int attempt = 0; attempt < 2000; ++attempt) {
    // narrow the radial band as attempts accumulate; points on a common
    // circle are always in convex position, so termination is guaranteed
    const double band = half_band * std::max(0.0, 1.0 - attempt / 200.0);
    std::uniform_real_distribution<double> radius(mid - band, mid + band);
    std::vector<double> angles(n);
    for (double& a : angles) a = angle(rng);
    std::sort(angles.begin(), angles.end());
    std::vector<Vec2> pts;
    pts.reserve(n);
    for (double a : angles) {
      const double r = radius(rng);
      pts.emplace_back(r * std::cos(a), r * std::sin(a));
    }
    const std::vector<Vec2> hull = convex_hull(pts);
    if (static_cast<int>(hull.size()) == n) return ConvexPolygon(hull);
  }
  throw Error("failed to sample a convex polygon with the requested vertex count");
}

std::vector<Vec2> random_sites_in_polygon(std::mt19937_64& rng, const ConvexPolygon& poly, int n,
                                          double min_separation) {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (const Vec2& v : poly.vertices()) {
    xlo = std::min(xlo, v.x());
    xhi = std::max(xhi, v.x());
    ylo = std::min(ylo, v.y());
    yhi = std::max(yhi, v.y());
  }
  std::uniform_real_distribution<double> ux(xlo, xhi), uy(ylo, yhi);
  std::vector<Vec2> sites;
  int attempts = 0;
  while (static_cast<int>(sites.size()) < n) {
    if (++attempts > 100000) throw Error("failed to place sites with the requested separation");
    const Vec2 cand(ux(rng), uy(rng));
    if (!poly.contains(cand, 1e-9)) continue;
    bool clear = true;
    for (const Vec2& s : sites)
      if ((s - cand).norm() < min_separation) {
        clear = false;
        break;
      }
    if (clear) sites.push_back(cand);
  }
  return sites;
}

}  // namespace torus
