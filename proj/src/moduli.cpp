#include "torus_spectra/moduli.hpp"

#include <algorithm>
#include <cmath>

namespace torus {

namespace {
constexpr double kBoundaryClamp = 1e-12;
constexpr double kUnimodularTol = 1e-9;
constexpr double kConditionLimit = 1e8;
constexpr long kEnumerationCap = 1'000'000;
}  // namespace

TorusParams::TorusParams(double a_in, double b_in) : a(a_in), b(b_in) {
  if (!(b > 0.0)) throw DomainError("torus parameter b must be positive");
  if (a < 0.0) {
    if (a < -kBoundaryClamp) throw DomainError("torus parameter a must lie in [0, 1/2]");
    a = 0.0;
  }
  if (a > 0.5) {
    if (a > 0.5 + kBoundaryClamp) throw DomainError("torus parameter a must lie in [0, 1/2]");
    a = 0.5;
  }
  const double rad = a * a + b * b;
  if (rad < 1.0) {
    if (rad < 1.0 - kBoundaryClamp) throw DomainError("torus parameters must satisfy a^2 + b^2 >= 1");
    b = std::sqrt(1.0 - a * a);
    while (a * a + b * b < 1.0) b = std::nextafter(b, 2.0);  // land exactly on or above the circle
  }
}

Mat2 canonical_basis(const TorusParams& p) {
  const double sb = std::sqrt(p.b);
  Mat2 B;
  B << 1.0 / sb, p.a / sb, 0.0, sb;
  return B;
}

ReducedBasis reduce_basis(const Mat2& B) {
  const double det = B.determinant();
  if (std::abs(det) < 1e-12) throw DegenerateBasisError("basis columns are linearly dependent");
  if (std::abs(std::abs(det) - 1.0) > kUnimodularTol)
    throw NonUnimodularError("basis does not have unit covolume");
  if (B.squaredNorm() / std::abs(det) > kConditionLimit)
    throw DegenerateBasisError("basis condition number beyond threshold");

  Vec2 u = B.col(0);
  Vec2 v = B.col(1);
  IMat2 W = IMat2::Identity();

  // Gauss-Lagrange: shortest vector first, then subtract rounded projections.
  for (int iter = 0;; ++iter) {
    if (iter > 64) throw DegenerateBasisError("lattice reduction failed to terminate");
    if (u.squaredNorm() > v.squaredNorm()) {
      std::swap(u, v);
      W.col(0).swap(W.col(1));
    }
    const double ratio = u.dot(v) / u.squaredNorm();
    if (std::abs(ratio) <= 0.5) break;
    const auto mu = static_cast<std::int64_t>(std::llround(ratio));
    v -= static_cast<double>(mu) * u;
    W.col(1) -= mu * W.col(0);
  }
  if (u.dot(v) < 0.0) {  // acute angle between the generators
    v = -v;
    W.col(1) = -W.col(1);
  }

  const double b = 1.0 / u.squaredNorm();
  const double a = u.dot(v) * b;
  const TorusParams params(a, b);

  ReducedBasis out{params, W, Mat2::Identity()};
  const Mat2 Wd = W.cast<double>();
  out.orthogonal = (B * Wd) * canonical_basis(params).inverse();
  return out;
}

DualLattice dual_basis(const Mat2& B, double enumeration_radius) {
  const double det = B.determinant();
  if (std::abs(det) < 1e-12) throw DegenerateBasisError("basis columns are linearly dependent");
  return {B.inverse().transpose(), enumeration_radius};
}

std::vector<DualVector> enumerate_dual(const DualLattice& d, double radius) {
  if (!(radius > 0.0)) throw BadParameterError("enumeration radius must be positive");
  const double covolume = std::abs(d.basis.determinant());
  if (covolume < 1e-12) throw DegenerateBasisError("dual basis is singular");

  // expected count ~ pi r^2 / covolume; the box bound guards skewed bases
  const double expected = M_PI * radius * radius / covolume;
  const double box_bound = std::ceil(d.basis.inverse().norm() * radius) + 1.0;
  if (expected > kEnumerationCap || (2.0 * box_bound + 1.0) * (2.0 * box_bound + 1.0) > 16.0 * kEnumerationCap)
    throw RadiusTooLargeError("dual enumeration exceeds configured cap");

  const int mmax = static_cast<int>(box_bound);
  const double r2 = radius * radius * (1.0 + 1e-14);
  std::vector<DualVector> out;
  for (int m = -mmax; m <= mmax; ++m) {
    for (int n = -mmax; n <= mmax; ++n) {
      const Vec2 k = d.basis * Vec2(m, n);
      if (k.squaredNorm() <= r2) out.push_back({IVec2(m, n), k});
    }
  }
  std::sort(out.begin(), out.end(), [](const DualVector& p, const DualVector& q) {
    const double np = p.k.squaredNorm(), nq = q.k.squaredNorm();
    if (np != nq) return np < nq;
    if (p.index.x() != q.index.x()) return p.index.x() < q.index.x();
    return p.index.y() < q.index.y();
  });
  return out;
}

std::vector<DualVector> enumerate_dual(const DualLattice& d) {
  return enumerate_dual(d, d.enumeration_radius);
}

}  // namespace torus
