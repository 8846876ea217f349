#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "torus_spectra/objective.hpp"
#include "torus_spectra/spectral.hpp"

using torus::eigenvalue;
using torus::hs_norm;
using torus::Kernel;
using torus::operator_norm;
using torus::spectrum;
using torus::SpectrumReport;
using torus::TorusParams;
using torus::Vec2;

TEST_CASE("gamma at k = 0 is the cell mass") {
  std::mt19937_64 rng(83);
  for (int i = 0; i < 5; ++i) {
    const TorusParams p = test_support::random_params(rng);
    CHECK(eigenvalue(p, Vec2::Zero(), torus::constant_kernel()) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("flat kernel kills every nonzero mode") {
  // analytic: int_{-1/2}^{1/2} cos(2 pi x) dx = 0
  const TorusParams sq = TorusParams::square();
  CHECK(std::abs(eigenvalue(sq, {1.0, 0.0}, torus::constant_kernel())) <= 1e-10);
  CHECK(std::abs(eigenvalue(sq, {1.0, 1.0}, torus::constant_kernel())) <= 1e-10);
}

TEST_CASE("gaussian eigenvalues on the square torus against a separable oracle") {
  const TorusParams sq = TorusParams::square();
  const Kernel g = torus::gaussian_kernel(0.3);
  auto profile_1d = [](double x) { return std::exp(-x * x / 0.09); };

  SUBCASE("k = 0") {
    const double line = test_support::simpson_oracle(profile_1d, -0.5, 0.5, 1e-14);
    const double oracle = line * line;
    CHECK(oracle == doctest::Approx(0.272).epsilon(2e-3));  // desk-scale sanity
    CHECK(eigenvalue(sq, Vec2::Zero(), g) == doctest::Approx(oracle).epsilon(1e-10));
  }
  SUBCASE("k = (1,0)") {
    const double cos_line = test_support::simpson_oracle(
        [&](double x) { return profile_1d(x) * std::cos(2.0 * M_PI * x); }, -0.5, 0.5, 1e-14);
    const double flat_line = test_support::simpson_oracle(profile_1d, -0.5, 0.5, 1e-14);
    CHECK(eigenvalue(sq, {1.0, 0.0}, g) ==
          doctest::Approx(cos_line * flat_line).epsilon(1e-9));
  }
}

TEST_CASE("non-dual vectors are rejected") {
  CHECK_THROWS_AS(eigenvalue(TorusParams::square(), {0.5, 0.3}, torus::constant_kernel()),
                  torus::NotDualVectorError);
  // dual vectors of the equilateral torus are fine even with irrational entries
  const TorusParams eq = TorusParams::equilateral();
  const auto dual = torus::dual_basis(torus::canonical_basis(eq));
  CHECK_NOTHROW(eigenvalue(eq, dual.basis * Vec2(1, 0), torus::gaussian_kernel(0.5)));
}

TEST_CASE("spectrum of the flat kernel on the square torus") {
  const SpectrumReport rep = spectrum(TorusParams::square(), torus::constant_kernel(), 1.5);
  CHECK(rep.entries.size() == 9);
  CHECK(rep.operator_norm == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& e : rep.entries) {
    if (e.index.squaredNorm() > 0) CHECK(std::abs(e.eigenvalue) <= 1e-10);
  }
  CHECK(rep.dominance_ok);
  CHECK(rep.symmetry_ok);
}

TEST_CASE("wrapped gaussian spectrum is positive and dominated") {
  const SpectrumReport rep = spectrum(TorusParams::square(), torus::gaussian_kernel(0.3), 2.0);
  for (const auto& e : rep.entries) CHECK(e.eigenvalue > 0.0);
  CHECK(rep.dominance_ok);
  CHECK(rep.symmetry_ok);
  CHECK(rep.max_sine_part < 1e-9);
  // deterministic order: radius first, then lexicographic indices
  for (std::size_t i = 1; i < rep.entries.size(); ++i) {
    const double prev = rep.entries[i - 1].k.squaredNorm();
    const double cur = rep.entries[i].k.squaredNorm();
    CHECK(prev <= cur + 1e-12);
  }
}

TEST_CASE("eigenvalue dominance across the moduli space") {
  std::mt19937_64 rng(89);
  torus::QuadratureConfig cfg;
  cfg.rel_tol = 1e-9;
  cfg.abs_tol = 1e-11;
  const Kernel kernels[] = {torus::gaussian_kernel(0.3), torus::inverse_power_kernel(1.0, 2.0)};
  for (int i = 0; i < 5; ++i) {
    const TorusParams p = test_support::random_params(rng);
    for (const Kernel& k : kernels) {
      const SpectrumReport rep = spectrum(p, k, 3.0, cfg);
      CAPTURE(p.a);
      CAPTURE(p.b);
      CAPTURE(k.label);
      CHECK(rep.dominance_ok);
      CHECK(rep.symmetry_ok);
    }
  }
}

TEST_CASE("operator norm of the incircle indicator") {
  torus::QuadratureConfig cfg;
  cfg.rel_tol = 1e-7;
  cfg.abs_tol = 1e-8;
  const double norm = operator_norm(TorusParams::square(), torus::ball_indicator_kernel(0.5), cfg);
  CHECK(norm == doctest::Approx(M_PI / 4.0).epsilon(1e-6));
}

TEST_CASE("operator norm equals the objective through both code paths") {
  std::mt19937_64 rng(97);
  for (int i = 0; i < 5; ++i) {
    const TorusParams p = test_support::random_params(rng);
    const Kernel k = torus::gaussian_kernel(0.35);
    const double via_spectrum = operator_norm(p, k);
    const double via_objective = torus::objective(p, k);
    const double via_halfplane = torus::objective_halfplane(p, k);
    CHECK(via_spectrum == doctest::Approx(via_objective).epsilon(2e-10));
    CHECK(via_spectrum == doctest::Approx(via_halfplane).epsilon(2e-9));
  }
}

TEST_CASE("Hilbert-Schmidt norm identities") {
  CHECK(hs_norm(TorusParams::square(), torus::constant_kernel()) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // indicators are idempotent, so the HS norm is the operator norm
  torus::QuadratureConfig cfg;
  cfg.rel_tol = 1e-7;
  cfg.abs_tol = 1e-8;
  const Kernel ball = torus::ball_indicator_kernel(0.55);
  const TorusParams eq = TorusParams::equilateral();
  CHECK(hs_norm(eq, ball, cfg) == doctest::Approx(operator_norm(eq, ball, cfg)).epsilon(1e-6));

  // squaring a gaussian rescales its width by 1/sqrt(2)
  std::mt19937_64 rng(101);
  for (const double ell : {0.3, 0.5, 1.0}) {
    const TorusParams p = test_support::random_params(rng);
    const double lhs = hs_norm(p, torus::gaussian_kernel(ell));
    const double rhs = operator_norm(p, torus::gaussian_kernel(ell / std::sqrt(2.0)));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("spectrum inherits the enumeration cap") {
  CHECK_THROWS_AS(spectrum(TorusParams::square(), torus::constant_kernel(), 1e4),
                  torus::RadiusTooLargeError);
}
