#pragma once

#include <functional>
#include <string>

#include "torus_spectra/cellgeom.hpp"

namespace torus {

enum class Monotonicity { strictly_decreasing, non_increasing };

/// Isotropic stationary kernel profile f, evaluated at SQUARED distance.
/// (The moment suite uses profiles of plain distance; the two conventions are
/// never mixed.)
struct Kernel {
  std::function<double(double)> profile;  // argument: squared distance
  Monotonicity monotonicity = Monotonicity::non_increasing;
  std::string label;

  double operator()(double dist_sq) const { return profile(dist_sq); }
};

Kernel constant_kernel();
Kernel gaussian_kernel(double ell);                 // f(t) = exp(-t / ell^2)
Kernel inverse_power_kernel(double eps, double p);  // f(t) = (eps + t)^-p
Kernel ball_indicator_kernel(double R);             // f(t) = 1{t <= R^2}

/// CLI kernel spec strings: "constant", "gaussian:0.3", "invpow:1.0:2.0",
/// "ball:0.5". Throws BadParameterError on anything else.
Kernel parse_kernel_spec(const std::string& spec);

struct AdmissibilityReport {
  enum class Failure { none, not_positive, not_monotone };
  bool admissible = false;
  Failure failure = Failure::none;
  double witness_t1 = 0.0;  // positivity: offending t; monotonicity: first of the pair
  double witness_t2 = 0.0;
  double integral_f2 = 0.0;  // integral of f^2 over D_{a,b}
  bool integral_converged = true;
};

/// Samples positivity and monotonicity of the profile on [0, 2 r2^2] with a
/// 1e3-point grid and evaluates the square-integrability integral over the
/// cell (finite here since the torus is compact, but the value is reported).
AdmissibilityReport check_admissible(const Kernel& k, const TorusParams& p,
                                     const QuadratureConfig& cfg = {});

}  // namespace torus
