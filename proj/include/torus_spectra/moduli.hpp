#pragma once

#include <cmath>
#include <vector>

#include "torus_spectra/types.hpp"

namespace torus {

/// A point of the moduli space U of unit-volume flat tori:
/// a in [0, 1/2], b > 0, a^2 + b^2 >= 1. Roundoff-level boundary violations
/// (within 1e-12) are clamped onto the boundary; anything larger throws
/// DomainError.
struct TorusParams {
  double a;
  double b;

  TorusParams(double a_in, double b_in);

  static TorusParams square() { return {0.0, 1.0}; }
  static TorusParams equilateral() { return {0.5, std::sqrt(3.0) / 2.0}; }
};

/// Result of reducing an arbitrary unit-volume basis: B * W = Q * canonical_basis(params)
/// with W unimodular and Q orthogonal.
struct ReducedBasis {
  TorusParams params;
  IMat2 unimodular;
  Mat2 orthogonal;
};

struct DualLattice {
  Mat2 basis;                 // inverse-transpose of the primal basis
  double enumeration_radius;  // default radius for enumerate_dual(d)
};

struct DualVector {
  IVec2 index;  // integer coordinates in the dual basis
  Vec2 k;
};

/// Columns generate the lattice: [[1/sqrt(b), a/sqrt(b)], [0, sqrt(b)]].
Mat2 canonical_basis(const TorusParams& p);

/// Gauss-Lagrange reduction of a unit-volume basis to the fundamental domain:
/// shortest vector first, acute angle, then a mapped into [0, 1/2] by the
/// a -> a+1 shifts and the reflection a -> -a.
/// Throws NonUnimodularError when |det B| differs from 1 by more than 1e-9
/// and DegenerateBasisError for singular or extremely ill-conditioned input.
ReducedBasis reduce_basis(const Mat2& B);

DualLattice dual_basis(const Mat2& B, double enumeration_radius = 4.0);

/// All dual vectors with norm <= radius, k = 0 included, closed under
/// negation. Sorted by (|k|, m, n) so output order is deterministic.
/// Throws RadiusTooLargeError when the request would exceed 1e6 vectors.
std::vector<DualVector> enumerate_dual(const DualLattice& d, double radius);
std::vector<DualVector> enumerate_dual(const DualLattice& d);

}  // namespace torus
