#include "torus_spectra/objective.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "torus_spectra/cellgeom.hpp"

namespace torus {

namespace {

double sq(double x) { return x * x; }

QuadratureConfig inner_config(const QuadratureConfig& cfg) {
  QuadratureConfig inner = cfg;
  inner.rel_tol = 0.1 * cfg.rel_tol;
  inner.abs_tol = 0.1 * cfg.abs_tol;
  return inner;
}

int default_thread_count() {
  if (const char* env = std::getenv("TORUS_SPECTRA_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return std::min(n, 64);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 64u));
}

}  // namespace

namespace detail {

IntegralResult objective_raw(double a, double b, const Kernel& kernel, const QuadratureConfig& cfg) {
  return integrate_polygon(
      cell_polygon_raw(a, b), [&](const Vec2& x) { return kernel(x.squaredNorm()); }, cfg);
}

}  // namespace detail

double objective(const TorusParams& p, const Kernel& kernel, const QuadratureConfig& cfg) {
  return detail::objective_raw(p.a, p.b, kernel, cfg).value;
}

double objective_halfplane(const TorusParams& p, const Kernel& kernel,
                           const QuadratureConfig& cfg) {
  const EdgeFunctions e = edge_functions(p);
  const QuadratureConfig inner = inner_config(cfg);
  auto column = [&](double x, double top) {
    return integrate_1d(0.0, top, [&](double y) { return kernel(x * x + y * y); }, inner).value;
  };
  // at a = 0 the first interval is empty and contributes nothing
  const double first =
      e.x2 > -e.x1
          ? integrate_1d(-e.x1, e.x2, [&](double x) { return column(x, e.y1(x)); }, cfg).value
          : 0.0;
  const double second =
      integrate_1d(e.x2, e.x1, [&](double x) { return column(x, e.y2(x)); }, cfg).value;
  return 2.0 * (first + second);
}

double objective_da(const TorusParams& p, const Kernel& kernel, const QuadratureConfig& cfg) {
  const double a = p.a, b = p.b;
  const double sb = std::sqrt(b);
  const EdgeFunctions e = edge_functions(p);
  const double xm = a / sb;  // split point of the y2 edge integral
  auto f1 = [&](double x) { return kernel(x * x + sq(e.y1(x))); };
  auto f2 = [&](double x) { return kernel(x * x + sq(e.y2(x))); };
  const double left =
      integrate_1d(-e.x1, e.x2, [&](double x) { return f1(x) * (x - (a - 1.0) / sb); }, cfg).value;
  const double mid =
      integrate_1d(e.x2, xm, [&](double x) { return f2(x) * (xm - x); }, cfg).value;
  const double right =
      integrate_1d(xm, e.x1, [&](double x) { return f2(x) * (x - xm); }, cfg).value;
  return 2.0 * (-left + mid - right) / b;
}

EdgeBDerivatives edge_b_derivatives(const TorusParams& p) {
  const double a = p.a, b = p.b;
  const double sb = std::sqrt(b);
  const double b52 = b * b * sb;
  EdgeBDerivatives d;
  d.dy1_const = -3.0 * sq(1.0 - a) / (4.0 * b52) + 1.0 / (4.0 * sb);
  d.dy1_slope = -(1.0 - a) / (b * b);
  d.dy2_const = -3.0 * a * a / (4.0 * b52) + 1.0 / (4.0 * sb);
  d.dy2_slope = a / (b * b);
  return d;
}

double objective_db(const TorusParams& p, const Kernel& kernel, const QuadratureConfig& cfg) {
  const double b = p.b;
  const EdgeFunctions e = edge_functions(p);
  const EdgeBDerivatives d = edge_b_derivatives(p);
  const double x1_sq = e.x1 * e.x1;  // 1/(4b)
  const double vertical =
      integrate_1d(0.0, e.y2(e.x1), [&](double y) { return kernel(x1_sq + y * y); }, cfg).value;
  const double along_y1 = integrate_1d(
      -e.x1, e.x2, [&](double x) { return kernel(x * x + sq(e.y1(x))) * d.db_y1(x); }, cfg).value;
  const double along_y2 = integrate_1d(
      e.x2, e.x1, [&](double x) { return kernel(x * x + sq(e.y2(x))) * d.db_y2(x); }, cfg).value;
  return 2.0 * (-vertical / (2.0 * b * std::sqrt(b)) + along_y1 + along_y2);
}

StripArguments strip_arguments(const TorusParams& p, double z) {
  const double a = p.a, b = p.b;
  const double b3 = b * b * b;
  StripArguments s;
  s.removed_left = (b * b + sq(1.0 - a)) / (4.0 * b3) * (b * b + a * a * z * z);
  s.added = (a * a + b * b) / (16.0 * b3) * (4.0 * b * b + sq(1.0 - 2.0 * a - z));
  s.removed_right = (a * a + b * b) / (16.0 * b3) * (4.0 * b * b + sq((1.0 - 2.0 * a) * z - 1.0));
  return s;
}

StripIntegrals transformed_integrals(const TorusParams& p, const Kernel& kernel,
                                     const QuadratureConfig& cfg) {
  const double a = p.a, b = p.b;
  if (!(a > 0.0 && a < 0.5)) throw DomainError("transformed integrals require a in (0, 1/2)");
  const double coeff_identity = 4.0 * a * (1.0 - a) + sq(1.0 - 2.0 * a);
  if (std::abs(coeff_identity - 1.0) > 1e-12) throw Error("strip coefficient identity failed");

  const double scale = 1.0 / (16.0 * b * b);
  StripIntegrals out;
  out.removed_left =
      scale * integrate_1d(-1.0, 1.0,
                           [&](double z) {
                             return 4.0 * a * (1.0 - a) * kernel(strip_arguments(p, z).removed_left) *
                                    (1.0 - z);
                           },
                           cfg)
                  .value;
  out.added = scale * integrate_1d(-1.0, 1.0,
                                   [&](double z) {
                                     return kernel(strip_arguments(p, z).added) * (1.0 - z);
                                   },
                                   cfg)
                          .value;
  out.removed_right =
      scale * integrate_1d(-1.0, 1.0,
                           [&](double z) {
                             return sq(1.0 - 2.0 * a) * kernel(strip_arguments(p, z).removed_right) *
                                    (1.0 - z);
                           },
                           cfg)
                  .value;
  const double half_da = 0.5 * objective_da(p, kernel, cfg);
  out.identity_residual = std::abs((out.added - out.removed_left - out.removed_right) - half_da);
  return out;
}

ClaimReport claim_check(const TorusParams& p, int z_samples) {
  if (z_samples < 3) throw BadParameterError("claim check needs at least 3 z samples");
  if (!(p.a > 0.0)) throw DomainError("claims are stated for a in (0, 1/2]");
  const int n = z_samples;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> left_gap(n);
  double min_left = kInf, min_right = kInf;
  for (int i = 0; i < n; ++i) {
    const double z = -1.0 + 2.0 * i / (n - 1);
    const StripArguments s = strip_arguments(p, z);
    left_gap[i] = s.removed_left - s.added;
    min_left = std::min(min_left, left_gap[i]);
    if (i > 0 && i + 1 < n) min_right = std::min(min_right, s.removed_right - s.added);
  }
  const StripArguments at_lo = strip_arguments(p, -1.0);
  const StripArguments at_hi = strip_arguments(p, 1.0);
  double curvature = -kInf;
  for (int i = 1; i + 1 < n; ++i)
    curvature = std::max(curvature, left_gap[i - 1] - 2.0 * left_gap[i] + left_gap[i + 1]);

  ClaimReport rep{p,
                  z_samples,
                  min_left,
                  min_right,
                  at_lo.removed_left - at_lo.added,
                  at_hi.removed_left - at_hi.added,
                  curvature,
                  false};
  rep.ok = rep.min_left_gap >= -1e-12 && rep.min_right_gap > 0.0 &&
           std::abs(rep.left_gap_at_minus1) <= 1e-12 && rep.max_left_gap_curvature <= 1e-12;
  return rep;
}

DbSignReport db_sign_check(const TorusParams& p, int z_samples, const Kernel& kernel,
                           const QuadratureConfig& cfg) {
  if (p.a != 0.5) throw DomainError("the b-slope reduction is stated on the a = 1/2 ray");
  if (z_samples < 1) throw BadParameterError("need at least one z sample");
  const double b = p.b;
  const EdgeFunctions e = edge_functions(p);
  const EdgeBDerivatives d = edge_b_derivatives(p);

  const double z_edge = (4.0 * b * b - 1.0) / (8.0 * b * std::sqrt(b));
  if (std::abs(z_edge - e.y2(e.x1)) > 1e-12) throw Error("vertical-edge height identity failed");

  const double c0 = (1.0 + 4.0 * b * b) / (16.0 * b);
  const double c2 = (1.0 + 4.0 * b * b) / sq(4.0 * b * b - 1.0);
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < z_samples; ++i) {
    const double z = z_edge * (i + 1) / (z_samples + 1);
    const double vertical_arg = 1.0 / (4.0 * b) + z * z;
    const double edge_arg = c0 + c2 * z * z;
    min_gap = std::min(min_gap, edge_arg - vertical_arg);
  }

  const double direct = 2.0 * integrate_1d(0.0, e.x1,
                                           [&](double x) {
                                             return kernel(x * x + sq(e.y2(x))) * d.db_y2(x);
                                           },
                                           cfg)
                                  .value;
  const double reduced =
      integrate_1d(0.0, z_edge, [&](double z) { return kernel(c0 + c2 * z * z); }, cfg).value /
      (2.0 * b * std::sqrt(b));

  DbSignReport rep{b, z_edge, min_gap, direct, reduced, false};
  rep.ok = rep.min_argument_gap >= -1e-12 &&
           std::abs(direct - reduced) <= std::max(1e-10, 1e-8 * std::abs(direct));
  return rep;
}

GradReport grad_check(const TorusParams& p, const Kernel& kernel, const QuadratureConfig& cfg,
                      double h) {
  if (!(h > 0.0)) throw BadParameterError("finite-difference step must be positive");
  auto raw = [&](double a, double b) {
    return detail::objective_raw(std::abs(a), b, kernel, cfg).value;  // J is even in a
  };
  // five-point central stencil: the gradient components are small (~1e-4)
  // while J is O(1), so the plain three-point stencil cannot reach 1e-5
  // relative agreement at any step before quadrature noise takes over
  auto central5 = [h](double fm2, double fm1, double fp1, double fp2) {
    return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
  };
  const double da_closed = objective_da(p, kernel, cfg);
  const double db_closed = objective_db(p, kernel, cfg);
  const double da_fd = central5(raw(p.a - 2.0 * h, p.b), raw(p.a - h, p.b), raw(p.a + h, p.b),
                                raw(p.a + 2.0 * h, p.b));
  const double db_fd = central5(raw(p.a, p.b - 2.0 * h), raw(p.a, p.b - h), raw(p.a, p.b + h),
                                raw(p.a, p.b + 2.0 * h));

  GradReport rep{p, da_closed, db_closed, da_fd, db_fd, 0.0};
  const double scale = std::max(std::hypot(da_closed, db_closed), std::hypot(da_fd, db_fd));
  rep.agreement = scale == 0.0 ? 0.0
                               : std::max(std::abs(da_closed - da_fd), std::abs(db_closed - db_fd)) /
                                     scale;
  return rep;
}

HessianResult hessian_fd(const TorusParams& p, const Kernel& kernel, const QuadratureConfig& cfg,
                         double h) {
  if (!(h > 0.0) || !(h < p.b)) throw BadParameterError("bad finite-difference step");
  double max_quad_err = 0.0;
  auto raw = [&](double a, double b) {
    const IntegralResult r = detail::objective_raw(std::abs(a), b, kernel, cfg);
    max_quad_err = std::max(max_quad_err, r.error_estimate);
    return r.value;
  };
  const double j00 = raw(p.a, p.b);
  const double haa = (raw(p.a + h, p.b) - 2.0 * j00 + raw(p.a - h, p.b)) / (h * h);
  const double hbb = (raw(p.a, p.b + h) - 2.0 * j00 + raw(p.a, p.b - h)) / (h * h);
  const double hab = (raw(p.a + h, p.b + h) - raw(p.a + h, p.b - h) - raw(p.a - h, p.b + h) +
                      raw(p.a - h, p.b - h)) /
                     (4.0 * h * h);

  const double noise = 4.0 * max_quad_err / (h * h);
  const double max_entry = std::max({std::abs(haa), std::abs(hbb), std::abs(hab)});
  if (noise > 0.1 * max_entry && noise > 1e-8)  // the dead band keeps a truly flat J answerable
    throw StepTooSmallError("quadrature noise dominates the finite-difference Hessian");

  HessianResult out;
  out.matrix << haa, hab, hab, hbb;
  const double mean = 0.5 * (haa + hbb);
  const double disc = std::sqrt(sq(0.5 * (haa - hbb)) + hab * hab);
  out.eig_min = mean - disc;
  out.eig_max = mean + disc;
  out.noise_floor = noise;
  return out;
}

PathResult optimize_path(const TorusParams& start, const Kernel& kernel,
                         const QuadratureConfig& cfg, double step) {
  if (!(step > 0.0)) throw BadParameterError("path step must be positive");
  if (kernel.monotonicity != Monotonicity::strictly_decreasing)
    throw BadParameterError("rearrangement path requires a strictly decreasing kernel");

  const double b_end = std::sqrt(3.0) / 2.0;
  std::vector<PathSample> samples;
  auto push = [&](double a, double b) {
    samples.push_back({a, b, objective(TorusParams(a, b), kernel, cfg)});
  };
  push(start.a, start.b);

  const double da = 0.5 - start.a;
  const int n1 = da > 1e-12 ? std::max(1, static_cast<int>(std::ceil(da / step))) : 0;
  for (int i = 1; i <= n1; ++i) push(i == n1 ? 0.5 : start.a + da * i / n1, start.b);

  // at a = 1/2 the moduli constraint is exactly b >= sqrt(3)/2, so the clamp
  // to U never cuts the target short
  const double db = start.b - b_end;
  const int n2 = db > 1e-12 ? std::max(1, static_cast<int>(std::ceil(db / step))) : 0;
  for (int j = 1; j <= n2; ++j) push(0.5, j == n2 ? b_end : start.b - db * j / n2);

  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].value > samples[i - 1].value - 1e-9))
      throw MonotonicityViolatedError("objective failed to increase along the rearrangement path",
                                      static_cast<int>(i));
  }
  return PathResult{start, TorusParams(0.5, start.b), TorusParams(0.5, b_end), samples, true};
}

SweepResult grid_sweep(const Kernel& kernel, const QuadratureConfig& cfg, int na, int nb,
                       double b_max, int threads) {
  if (!(b_max > 1.0)) throw BadParameterError("sweep requires b_max > 1");
  if (na < 2 || nb < 2) throw BadParameterError("sweep requires at least a 2x2 grid");

  const double b_min = std::sqrt(3.0) / 2.0;
  std::vector<SweepNode> nodes;
  for (int i = 0; i < na; ++i) {
    const double a = 0.5 * i / (na - 1);
    for (int j = 0; j < nb; ++j) {
      const double b = j == nb - 1 ? b_max : b_min + (b_max - b_min) * j / (nb - 1);
      if (a * a + b * b >= 1.0 - 1e-12) nodes.push_back({a, b, 0.0});
    }
  }

  int nthreads = threads > 0 ? std::min(threads, 64) : default_thread_count();
  nthreads = std::max(1, std::min<int>(nthreads, static_cast<int>(nodes.size())));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= nodes.size()) return;
      SweepNode& node = nodes[idx];
      node.value = objective(TorusParams(node.a, node.b), kernel, cfg);
    }
  };
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::size_t argmax = 0;
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (nodes[i].value > nodes[argmax].value) argmax = i;

  return SweepResult{na, nb, b_max, std::move(nodes), argmax};
}

}  // namespace torus
