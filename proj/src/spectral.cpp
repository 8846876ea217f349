#include "torus_spectra/spectral.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "torus_spectra/cellgeom.hpp"

namespace torus {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double cosine_part(const VoronoiCell& cell, const Vec2& k, const Kernel& kernel,
                   const QuadratureConfig& cfg) {
  return integrate_polygon(
             cell.polygon(),
             [&](const Vec2& x) { return kernel(x.squaredNorm()) * std::cos(kTwoPi * k.dot(x)); },
             cfg)
      .value;
}

double sine_part(const VoronoiCell& cell, const Vec2& k, const Kernel& kernel,
                 const QuadratureConfig& cfg) {
  QuadratureConfig sine_cfg = cfg;
  sine_cfg.abs_tol = std::max(cfg.abs_tol, 1e-10);  // the target is zero; rel_tol cannot bind
  return integrate_polygon(
             cell.polygon(),
             [&](const Vec2& x) { return kernel(x.squaredNorm()) * std::sin(kTwoPi * k.dot(x)); },
             sine_cfg)
      .value;
}

void require_dual(const TorusParams& p, const Vec2& k) {
  const Mat2 B = canonical_basis(p);
  for (int col = 0; col < 2; ++col) {
    const double ip = k.dot(B.col(col));
    if (std::abs(ip - std::round(ip)) > 1e-10)
      throw NotDualVectorError("k does not have integer inner products with the lattice");
  }
}

}  // namespace

double eigenvalue(const TorusParams& p, const Vec2& k, const Kernel& kernel,
                  const QuadratureConfig& cfg) {
  require_dual(p, k);
  const VoronoiCell cell = build_cell(p);
  if (k.squaredNorm() > 0.0) {
    const double s = sine_part(cell, k, kernel, cfg);
    if (std::abs(s) >= 1e-9)
      throw Error("sine part of an eigenvalue integral exceeded 1e-9; cell symmetry is broken");
  }
  return cosine_part(cell, k, kernel, cfg);
}

double operator_norm(const TorusParams& p, const Kernel& kernel, const QuadratureConfig& cfg) {
  return eigenvalue(p, Vec2::Zero(), kernel, cfg);
}

double hs_norm(const TorusParams& p, const Kernel& kernel, const QuadratureConfig& cfg) {
  const VoronoiCell cell = build_cell(p);
  return integrate_polygon(
             cell.polygon(),
             [&](const Vec2& x) {
               const double f = kernel(x.squaredNorm());
               return f * f;
             },
             cfg)
      .value;
}

SpectrumReport spectrum(const TorusParams& p, const Kernel& kernel, double radius,
                        const QuadratureConfig& cfg) {
  const Mat2 B = canonical_basis(p);
  const DualLattice dual = dual_basis(B, radius);
  const std::vector<DualVector> ks = enumerate_dual(dual, radius);

  SpectrumReport report{p, kernel.label, radius, {}, 0.0, 0.0, false, false, 0.0};
  const VoronoiCell cell = build_cell(p);
  std::map<std::pair<std::int64_t, std::int64_t>, double> by_index;
  for (const DualVector& kv : ks) {
    const double value = cosine_part(cell, kv.k, kernel, cfg);
    if (kv.k.squaredNorm() > 0.0) {
      const double s = std::abs(sine_part(cell, kv.k, kernel, cfg));
      report.max_sine_part = std::max(report.max_sine_part, s);
    }
    report.entries.push_back({kv.index, kv.k, value});
    by_index[{kv.index.x(), kv.index.y()}] = value;
  }

  const double gamma0 = by_index.at({0, 0});
  report.operator_norm = gamma0;
  report.hs_norm = hs_norm(p, kernel, cfg);

  report.dominance_ok = true;
  report.symmetry_ok = true;
  for (const SpectrumEntry& e : report.entries) {
    if (std::abs(e.eigenvalue) > gamma0 + 1e-10) report.dominance_ok = false;
    const auto mirror = by_index.find({-e.index.x(), -e.index.y()});
    if (mirror == by_index.end() || std::abs(mirror->second - e.eigenvalue) > 1e-9)
      report.symmetry_ok = false;
  }
  return report;
}

}  // namespace torus
