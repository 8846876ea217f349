#pragma once

#include <string>
#include <vector>

#include "torus_spectra/kernels.hpp"
#include "torus_spectra/moduli.hpp"

namespace torus {

struct SpectrumEntry {
  IVec2 index;
  Vec2 k;
  double eigenvalue;
};

struct SpectrumReport {
  TorusParams params;
  std::string kernel_label;
  double radius = 0.0;
  std::vector<SpectrumEntry> entries;  // sorted by (|k|, m, n)
  double operator_norm = 0.0;
  double hs_norm = 0.0;
  bool dominance_ok = false;  // |gamma(k)| <= gamma(0) + 1e-10 for every entry
  bool symmetry_ok = false;   // gamma(k) == gamma(-k) within 1e-9
  double max_sine_part = 0.0;
};

/// Eigenvalue gamma_f(k) of the kernel operator at dual vector k: the cosine
/// transform of f over the origin-centered cell. k must have integer inner
/// products with the primal generators (NotDualVectorError otherwise). The
/// sine part vanishes by polar symmetry and is checked below 1e-9.
double eigenvalue(const TorusParams& p, const Vec2& k, const Kernel& kernel,
                  const QuadratureConfig& cfg = {});

/// Largest eigenvalue, attained at k = 0: the integral of f over the cell.
double operator_norm(const TorusParams& p, const Kernel& kernel, const QuadratureConfig& cfg = {});

/// Hilbert-Schmidt norm as the integral of f^2 over the cell (the quantity
/// the operator convention reports; it coincides with the operator norm of
/// the squared-profile kernel).
double hs_norm(const TorusParams& p, const Kernel& kernel, const QuadratureConfig& cfg = {});

/// Eigenvalues over all dual vectors within the given radius, with dominance
/// and negation-symmetry checks folded into the report.
SpectrumReport spectrum(const TorusParams& p, const Kernel& kernel, double radius,
                        const QuadratureConfig& cfg = {});

}  // namespace torus
