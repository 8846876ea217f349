#include "torus_spectra/kernels.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace torus {

Kernel constant_kernel() {
  return {[](double) { return 1.0; }, Monotonicity::non_increasing, "constant"};
}

Kernel gaussian_kernel(double ell) {
  if (!(ell > 0.0)) throw BadParameterError("gaussian kernel requires ell > 0");
  const double inv = 1.0 / (ell * ell);
  std::ostringstream label;
  label << "gaussian:" << ell;
  return {[inv](double t) { return std::exp(-t * inv); }, Monotonicity::strictly_decreasing,
          label.str()};
}

Kernel inverse_power_kernel(double eps, double p) {
  if (!(eps > 0.0) || !(p > 0.0)) throw BadParameterError("inverse-power kernel requires eps, p > 0");
  std::ostringstream label;
  label << "invpow:" << eps << ":" << p;
  return {[eps, p](double t) { return std::pow(eps + t, -p); }, Monotonicity::strictly_decreasing,
          label.str()};
}

Kernel ball_indicator_kernel(double R) {
  if (!(R > 0.0)) throw BadParameterError("ball indicator kernel requires R > 0");
  const double r_sq = R * R;
  std::ostringstream label;
  label << "ball:" << R;
  return {[r_sq](double t) { return t <= r_sq ? 1.0 : 0.0; }, Monotonicity::non_increasing,
          label.str()};
}

Kernel parse_kernel_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::string token;
  std::istringstream in(spec);
  while (std::getline(in, token, ':')) parts.push_back(token);
  if (parts.empty()) throw BadParameterError("empty kernel spec");

  auto num = [&](std::size_t i) {
    if (i >= parts.size()) throw BadParameterError("kernel spec '" + spec + "' is missing a parameter");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(parts[i], &used);
    } catch (const std::exception&) {
      throw BadParameterError("kernel spec '" + spec + "' has a malformed number");
    }
    if (used != parts[i].size()) throw BadParameterError("kernel spec '" + spec + "' has a malformed number");
    return v;
  };

  if (parts[0] == "constant" && parts.size() == 1) return constant_kernel();
  if (parts[0] == "gaussian" && parts.size() == 2) return gaussian_kernel(num(1));
  if (parts[0] == "invpow" && parts.size() == 3) return inverse_power_kernel(num(1), num(2));
  if (parts[0] == "ball" && parts.size() == 2) return ball_indicator_kernel(num(1));
  throw BadParameterError("unknown kernel spec '" + spec + "'");
}

AdmissibilityReport check_admissible(const Kernel& k, const TorusParams& p,
                                     const QuadratureConfig& cfg) {
  AdmissibilityReport report;
  const VoronoiCell cell = build_cell(p);
  const double t_max = 2.0 * cell.r2 * cell.r2;
  const int n = 1000;

  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = t_max * i / (n - 1);
    const double f = k(t);
    if (f < 0.0) {
      report.failure = AdmissibilityReport::Failure::not_positive;
      report.witness_t1 = t;
      return report;
    }
    if (i > 0) {
      const double tol = 1e-12 * std::max(1.0, std::abs(prev));
      const bool strict = k.monotonicity == Monotonicity::strictly_decreasing;
      if (f > prev + tol || (strict && f >= prev)) {
        report.failure = AdmissibilityReport::Failure::not_monotone;
        report.witness_t1 = t_max * (i - 1) / (n - 1);
        report.witness_t2 = t;
        return report;
      }
    }
    prev = f;
  }

  const auto integral =
      integrate_polygon(cell.polygon(), [&](const Vec2& x) { const double f = k(x.squaredNorm()); return f * f; }, cfg);
  report.integral_f2 = integral.value;
  report.integral_converged = integral.converged;
  report.admissible = std::isfinite(integral.value);
  return report;
}

}  // namespace torus
