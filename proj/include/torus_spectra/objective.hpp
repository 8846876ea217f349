#pragma once

#include <vector>

#include "torus_spectra/kernels.hpp"

namespace torus {

/// J(a,b): the kernel mass of the Dirichlet-Voronoi cell, equivalently the
/// operator norm of the kernel operator on T_{a,b}.
double objective(const TorusParams& p, const Kernel& kernel, const QuadratureConfig& cfg = {});

/// Same quantity through the half-plane iterated form (two nested 1-D
/// integrals over the upper boundary pieces); an independent cross-check of
/// the polygon route.
double objective_halfplane(const TorusParams& p, const Kernel& kernel,
                           const QuadratureConfig& cfg = {});

/// Closed-form partial derivatives of J, evaluated as 1-D edge integrals.
double objective_da(const TorusParams& p, const Kernel& kernel, const QuadratureConfig& cfg = {});
double objective_db(const TorusParams& p, const Kernel& kernel, const QuadratureConfig& cfg = {});

/// b-derivatives of the cell edge functions, derived from the closed forms
/// and unit-tested against finite differences of y1, y2.
struct EdgeBDerivatives {
  double dy1_const = 0.0, dy1_slope = 0.0;
  double dy2_const = 0.0, dy2_slope = 0.0;
  double db_y1(double x) const { return dy1_const + dy1_slope * x; }
  double db_y2(double x) const { return dy2_const + dy2_slope * x; }
};
EdgeBDerivatives edge_b_derivatives(const TorusParams& p);

/// f-arguments of the three boundary strips of d/da J after mapping each
/// strip integral onto z in [-1,1]: the strip leaving the cell along the
/// long edge, the strip entering near the short edge, and the strip leaving
/// beyond it.
struct StripArguments {
  double removed_left = 0.0;
  double added = 0.0;
  double removed_right = 0.0;
};
StripArguments strip_arguments(const TorusParams& p, double z);

/// The three strip integrals themselves (all nonnegative), plus the residual
/// of the identity  added - removed_left - removed_right = (dJ/da)/2.
/// Requires a in (0, 1/2).
struct StripIntegrals {
  double removed_left = 0.0;
  double added = 0.0;
  double removed_right = 0.0;
  double identity_residual = 0.0;
};
StripIntegrals transformed_integrals(const TorusParams& p, const Kernel& kernel,
                                     const QuadratureConfig& cfg = {});

/// Samples the two argument-ordering claims behind dJ/da > 0 on a uniform
/// z grid: removed_left >= added on [-1,1] and removed_right > added on
/// (-1,1), plus the boundary identities and concavity of the first gap.
struct ClaimReport {
  TorusParams params;
  int z_samples = 0;
  double min_left_gap = 0.0;        // min of removed_left - added over the closed grid
  double min_right_gap = 0.0;       // min of removed_right - added over interior nodes
  double left_gap_at_minus1 = 0.0;  // exactly zero in exact arithmetic
  double left_gap_at_plus1 = 0.0;   // equals (1-2a)(a^2+b^2)/(4 b^3)
  double max_left_gap_curvature = 0.0;  // max discrete second difference (concave => <= 0)
  bool ok = false;
};
ClaimReport claim_check(const TorusParams& p, int z_samples);

/// Along a = 1/2 the sign of dJ/db reduces to an ordering of two f-arguments
/// on (0, z_edge) where z_edge = y2(x1) is the vertical-edge half-height;
/// this checks that ordering and the even/odd reduction of the edge term.
struct DbSignReport {
  double b = 0.0;
  double z_edge = 0.0;
  double min_argument_gap = 0.0;   // min of (edge-term argument) - (vertical-term argument)
  double edge_term_direct = 0.0;   // 2 * int_0^{x1} f(x^2 + y2^2) db_y2 dx
  double edge_term_reduced = 0.0;  // the same integral after the parity reduction
  bool ok = false;
};
DbSignReport db_sign_check(const TorusParams& p, int z_samples, const Kernel& kernel,
                           const QuadratureConfig& cfg = {});

/// Closed-form gradient against central differences (step h).
struct GradReport {
  TorusParams params;
  double da_closed = 0.0, db_closed = 0.0;
  double da_fd = 0.0, db_fd = 0.0;
  double agreement = 0.0;  // max relative disagreement over the two components
};
GradReport grad_check(const TorusParams& p, const Kernel& kernel, const QuadratureConfig& cfg = {},
                      double h = 2e-3);

/// Central-difference Hessian of J with closed-form 2x2 eigenvalues. Near the
/// moduli boundary the stencil evaluates the closed-form cell formulas, which
/// extend smoothly; at a = 0 the reflection symmetry J(-a,b) = J(a,b) is used
/// so only a >= 0 nodes are evaluated. Throws StepTooSmallError when the
/// quadrature noise estimate exceeds 10% of the entries.
struct HessianResult {
  Mat2 matrix = Mat2::Zero();
  double eig_min = 0.0, eig_max = 0.0;
  double noise_floor = 0.0;
};
HessianResult hessian_fd(const TorusParams& p, const Kernel& kernel, const QuadratureConfig& cfg = {},
                         double h = 1e-3);

/// The two-phase rearrangement path: raise a to 1/2, then lower b to
/// sqrt(3)/2, recording J at every waypoint. Strictly decreasing kernels give
/// a strictly increasing J sequence; a violation beyond 1e-9 slack throws
/// MonotonicityViolatedError with the offending step.
struct PathSample {
  double a = 0.0, b = 0.0, value = 0.0;
};
struct PathResult {
  TorusParams start, waypoint, end;
  std::vector<PathSample> samples;
  bool monotone = false;
};
PathResult optimize_path(const TorusParams& start, const Kernel& kernel,
                         const QuadratureConfig& cfg = {}, double step = 1e-2);

/// J over the grid U intersected with [0,1/2] x [sqrt(3)/2, b_max]. Nodes
/// outside U are skipped. Cells evaluate in parallel (capped by the
/// TORUS_SPECTRA_THREADS environment variable) with deterministic assembly.
struct SweepNode {
  double a = 0.0, b = 0.0, value = 0.0;
};
struct SweepResult {
  int na = 0, nb = 0;
  double b_max = 0.0;
  std::vector<SweepNode> nodes;  // a-major order
  std::size_t argmax = 0;        // index into nodes
};
SweepResult grid_sweep(const Kernel& kernel, const QuadratureConfig& cfg, int na, int nb,
                       double b_max, int threads = 0);

namespace detail {
/// J evaluated directly from the closed-form cell of raw (a,b) without moduli
/// validation; finite-difference stencils use this to step slightly past the
/// boundary of U, where the formulas still define a convex cell.
IntegralResult objective_raw(double a, double b, const Kernel& kernel, const QuadratureConfig& cfg);
}  // namespace detail

}  // namespace torus
