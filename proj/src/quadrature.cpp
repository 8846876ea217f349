#include "torus_spectra/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace torus {

namespace {

struct TriRulePoint {
  double l1, l2, l3, w;  // barycentric coordinates and weight (weights sum to 1)
};

void push_orbit3(std::vector<TriRulePoint>& rule, double alpha, double beta, double w) {
  rule.push_back({alpha, beta, beta, w});
  rule.push_back({beta, alpha, beta, w});
  rule.push_back({beta, beta, alpha, w});
}

// absorb the published weights' roundoff so constants integrate exactly
void normalize_weights(std::vector<TriRulePoint>& rule) {
  double sum = 0.0;
  for (const auto& pt : rule) sum += pt.w;
  rule.front().w -= sum - 1.0;
}

void push_orbit6(std::vector<TriRulePoint>& rule, double a, double b, double c, double w) {
  rule.push_back({a, b, c, w});
  rule.push_back({a, c, b, w});
  rule.push_back({b, a, c, w});
  rule.push_back({b, c, a, w});
  rule.push_back({c, a, b, w});
  rule.push_back({c, b, a, w});
}

// 3-point symmetric rule, exact to degree 2.
const std::vector<TriRulePoint>& tri_rule_deg2() {
  static const std::vector<TriRulePoint> rule = [] {
    std::vector<TriRulePoint> r;
    push_orbit3(r, 2.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0);
    normalize_weights(r);
    return r;
  }();
  return rule;
}

// Radon 7-point rule, exact to degree 5.
const std::vector<TriRulePoint>& tri_rule_deg5() {
  static const std::vector<TriRulePoint> rule = [] {
    std::vector<TriRulePoint> r;
    const double s15 = std::sqrt(15.0);
    r.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0});
    const double a1 = (6.0 - s15) / 21.0;
    const double a2 = (6.0 + s15) / 21.0;
    push_orbit3(r, 1.0 - 2.0 * a1, a1, (155.0 - s15) / 1200.0);
    push_orbit3(r, 1.0 - 2.0 * a2, a2, (155.0 + s15) / 1200.0);
    normalize_weights(r);
    return r;
  }();
  return rule;
}

// Dunavant 13-point rule, exact to degree 7.
const std::vector<TriRulePoint>& tri_rule_deg7() {
  static const std::vector<TriRulePoint> rule = [] {
    std::vector<TriRulePoint> r;
    r.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, -0.149570044467670});
    push_orbit3(r, 0.479308067841923, 0.260345966079038, 0.175615257433204);
    push_orbit3(r, 0.869739794195568, 0.065130102902216, 0.053347235608839);
    push_orbit6(r, 0.638444188569809, 0.312865496004875, 0.048690315425316, 0.077113760890257);
    normalize_weights(r);
    return r;
  }();
  return rule;
}

struct TriRegion {
  Vec2 a, b, c;
  double value = 0.0;
  double err = 0.0;
  int depth = 0;
  long seq = 0;
};

struct TriRegionLess {
  bool operator()(const TriRegion& x, const TriRegion& y) const {
    if (x.err != y.err) return x.err < y.err;
    return x.seq > y.seq;  // older regions refine first on ties
  }
};

double tri_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  const Vec2 u = b - a, v = c - a;
  return 0.5 * std::abs(u.x() * v.y() - u.y() * v.x());
}

double apply_tri_rule(const std::vector<TriRulePoint>& rule, const Vec2& a, const Vec2& b,
                      const Vec2& c, double area, const std::function<double(const Vec2&)>& g,
                      std::vector<double>& samples) {
  double acc = 0.0;
  for (const auto& pt : rule) {
    const Vec2 x = pt.l1 * a + pt.l2 * b + pt.l3 * c;
    const double v = g(x);
    if (!std::isfinite(v)) throw NonFiniteIntegrandError("integrand not finite", x);
    samples.push_back(v);
    acc += pt.w * v;
  }
  return acc * area;
}

// Rule pairs can agree by accident across a jump (a cap of an indicator's
// support falling between sample points), which would freeze a wrong cell
// forever. Detect a two-clustered value distribution and floor the error by
// the worst misassignable mass. Smoothly varying integrands fill the value
// range without a dominant gap, so the floor stays off for them.
double jump_error_floor(std::vector<double>& samples, double measure) {
  std::sort(samples.begin(), samples.end());
  const double range = samples.back() - samples.front();
  if (range <= 0.0) return 0.0;
  double largest_gap = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i)
    largest_gap = std::max(largest_gap, samples[i] - samples[i - 1]);
  if (largest_gap < 0.5 * range) return 0.0;
  return 0.25 * range * measure;
}

TriRegion eval_triangle(const Vec2& a, const Vec2& b, const Vec2& c, int depth, long seq,
                        const std::vector<TriRulePoint>& high, const std::vector<TriRulePoint>& low,
                        const std::function<double(const Vec2&)>& g) {
  TriRegion r;
  r.a = a;
  r.b = b;
  r.c = c;
  r.depth = depth;
  r.seq = seq;
  const double area = tri_area(a, b, c);
  if (area == 0.0) return r;
  std::vector<double> samples;
  samples.reserve(high.size() + low.size() + 6);
  r.value = apply_tri_rule(high, a, b, c, area, g, samples);
  const double lo = apply_tri_rule(low, a, b, c, area, g, samples);
  for (const Vec2& x : {a, b, c, Vec2(0.5 * (a + b)), Vec2(0.5 * (b + c)), Vec2(0.5 * (c + a))}) {
    const double v = g(x);
    if (!std::isfinite(v)) throw NonFiniteIntegrandError("integrand not finite", x);
    samples.push_back(v);
  }
  r.err = std::max(std::abs(r.value - lo), jump_error_floor(samples, area));
  return r;
}

// Compensated accumulator; error totals stay meaningful over ~1e6 updates.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

double tolerance_target(const QuadratureConfig& cfg, double value) {
  return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

// Quadpack 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct SegRegion {
  double lo = 0.0, hi = 0.0;
  double value = 0.0;
  double err = 0.0;
  int depth = 0;
  long seq = 0;
};

struct SegRegionLess {
  bool operator()(const SegRegion& x, const SegRegion& y) const {
    if (x.err != y.err) return x.err < y.err;
    return x.seq > y.seq;
  }
};

SegRegion eval_segment(double lo, double hi, int depth, long seq,
                       const std::function<double(double)>& g) {
  SegRegion r;
  r.lo = lo;
  r.hi = hi;
  r.depth = depth;
  r.seq = seq;
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = g(center);
  if (!std::isfinite(fc)) throw NonFiniteIntegrandError("integrand not finite", {center, 0.0});
  std::vector<double> samples;
  samples.reserve(17);
  samples.push_back(fc);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double x1 = center - half * kXgk[i];
    const double x2 = center + half * kXgk[i];
    const double f1 = g(x1);
    const double f2 = g(x2);
    if (!std::isfinite(f1)) throw NonFiniteIntegrandError("integrand not finite", {x1, 0.0});
    if (!std::isfinite(f2)) throw NonFiniteIntegrandError("integrand not finite", {x2, 0.0});
    samples.push_back(f1);
    samples.push_back(f2);
    kronrod += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);  // Gauss nodes are the odd Kronrod nodes
  }
  for (const double x : {lo, hi}) {
    const double v = g(x);
    if (!std::isfinite(v)) throw NonFiniteIntegrandError("integrand not finite", {x, 0.0});
    samples.push_back(v);
  }
  r.value = kronrod * half;
  r.err = std::max(std::abs((kronrod - gauss) * half), jump_error_floor(samples, hi - lo));
  return r;
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) : verts_(std::move(vertices)) {
  const std::size_t n = verts_.size();
  if (n < 3) throw BadParameterError("polygon needs at least 3 vertices");
  double area2 = 0.0;
  double cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = verts_[i];
    const Vec2& q = verts_[(i + 1) % n];
    const double cross = p.x() * q.y() - q.x() * p.y();
    area2 += cross;
    cx += (p.x() + q.x()) * cross;
    cy += (p.y() + q.y()) * cross;
  }
  if (!(area2 > 0.0)) throw BadParameterError("polygon must be counter-clockwise with nonzero area");
  area_ = 0.5 * area2;
  centroid_ = Vec2(cx, cy) / (3.0 * area2);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = verts_[(i + 1) % n] - verts_[i];
    const Vec2 e1 = verts_[(i + 2) % n] - verts_[(i + 1) % n];
    const double cross = e0.x() * e1.y() - e0.y() * e1.x();
    const double scale = std::max(1.0, e0.norm() * e1.norm());
    if (cross < -1e-12 * scale) throw BadParameterError("polygon is not convex");
  }
}

bool ConvexPolygon::contains(const Vec2& p, double tol) const {
  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = verts_[(i + 1) % n] - verts_[i];
    const Vec2 d = p - verts_[i];
    if (e.x() * d.y() - e.y() * d.x() < -tol * std::max(1.0, e.norm())) return false;
  }
  return true;
}

IntegralResult integrate_polygon(const ConvexPolygon& poly,
                                 const std::function<double(const Vec2&)>& g,
                                 const QuadratureConfig& cfg) {
  const auto& high = cfg.rule_order >= 6 ? tri_rule_deg7() : tri_rule_deg5();
  const auto& low = cfg.rule_order >= 6 ? tri_rule_deg5() : tri_rule_deg2();

  std::vector<TriRegion> heap;
  long seq = 0;
  Kahan value, err;
  const Vec2 c = poly.centroid();
  const auto& v = poly.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    TriRegion r = eval_triangle(c, v[i], v[(i + 1) % v.size()], 0, seq++, high, low, g);
    value.add(r.value);
    err.add(r.err);
    heap.push_back(r);
  }
  std::make_heap(heap.begin(), heap.end(), TriRegionLess{});

  Kahan frozen_value, frozen_err;
  while (!heap.empty() && err.sum + frozen_err.sum > tolerance_target(cfg, value.sum + frozen_value.sum)) {
    if (heap.front().err == 0.0) break;  // nothing left that subdivision can improve
    if (static_cast<long>(heap.size()) > cfg.max_regions) break;
    std::pop_heap(heap.begin(), heap.end(), TriRegionLess{});
    const TriRegion worst = heap.back();
    heap.pop_back();
    if (worst.depth >= cfg.max_depth) {
      value.add(-worst.value);
      err.add(-worst.err);
      frozen_value.add(worst.value);
      frozen_err.add(worst.err);
      continue;
    }
    value.add(-worst.value);
    err.add(-worst.err);
    const Vec2 mab = 0.5 * (worst.a + worst.b);
    const Vec2 mbc = 0.5 * (worst.b + worst.c);
    const Vec2 mca = 0.5 * (worst.c + worst.a);
    const Vec2 tris[4][3] = {{worst.a, mab, mca}, {mab, worst.b, mbc}, {mca, mbc, worst.c}, {mab, mbc, mca}};
    for (const auto& t : tris) {
      TriRegion child = eval_triangle(t[0], t[1], t[2], worst.depth + 1, seq++, high, low, g);
      value.add(child.value);
      err.add(child.err);
      heap.push_back(child);
      std::push_heap(heap.begin(), heap.end(), TriRegionLess{});
    }
  }

  // exact resum of live regions for the reported value
  Kahan final_value, final_err;
  for (const auto& r : heap) {
    final_value.add(r.value);
    final_err.add(r.err);
  }
  final_value.add(frozen_value.sum);
  final_err.add(frozen_err.sum);

  IntegralResult out;
  out.value = final_value.sum;
  out.error_estimate = final_err.sum;
  out.converged = final_err.sum <= tolerance_target(cfg, final_value.sum);
  return out;
}

IntegralResult integrate_1d(double lo, double hi, const std::function<double(double)>& g,
                            const QuadratureConfig& cfg) {
  if (!(lo <= hi)) throw BadParameterError("integrate_1d requires lo <= hi");
  if (lo == hi) return {0.0, 0.0, true};

  std::vector<SegRegion> heap;
  long seq = 0;
  Kahan value, err;
  {
    SegRegion r = eval_segment(lo, hi, 0, seq++, g);
    value.add(r.value);
    err.add(r.err);
    heap.push_back(r);
  }

  Kahan frozen_value, frozen_err;
  while (!heap.empty() && err.sum + frozen_err.sum > tolerance_target(cfg, value.sum + frozen_value.sum)) {
    if (heap.front().err == 0.0) break;
    if (static_cast<long>(heap.size()) > cfg.max_regions) break;
    std::pop_heap(heap.begin(), heap.end(), SegRegionLess{});
    const SegRegion worst = heap.back();
    heap.pop_back();
    if (worst.depth >= cfg.max_depth) {
      value.add(-worst.value);
      err.add(-worst.err);
      frozen_value.add(worst.value);
      frozen_err.add(worst.err);
      continue;
    }
    value.add(-worst.value);
    err.add(-worst.err);
    const double mid = 0.5 * (worst.lo + worst.hi);
    for (const auto& [l, h] : {std::pair{worst.lo, mid}, std::pair{mid, worst.hi}}) {
      SegRegion child = eval_segment(l, h, worst.depth + 1, seq++, g);
      value.add(child.value);
      err.add(child.err);
      heap.push_back(child);
      std::push_heap(heap.begin(), heap.end(), SegRegionLess{});
    }
  }

  Kahan final_value, final_err;
  for (const auto& r : heap) {
    final_value.add(r.value);
    final_err.add(r.err);
  }
  final_value.add(frozen_value.sum);
  final_err.add(frozen_err.sum);

  IntegralResult out;
  out.value = final_value.sum;
  out.error_estimate = final_err.sum;
  out.converged = final_err.sum <= tolerance_target(cfg, final_value.sum);
  return out;
}

}  // namespace torus
