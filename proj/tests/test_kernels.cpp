#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "torus_spectra/kernels.hpp"

using torus::AdmissibilityReport;
using torus::check_admissible;
using torus::Kernel;
using torus::Monotonicity;
using torus::TorusParams;

TEST_CASE("builtin profiles") {
  CHECK(torus::gaussian_kernel(1.0)(0.0) == doctest::Approx(1.0));
  CHECK(torus::gaussian_kernel(0.5)(0.25) == doctest::Approx(std::exp(-1.0)));
  CHECK(torus::ball_indicator_kernel(0.5)(0.24) == 1.0);
  CHECK(torus::ball_indicator_kernel(0.5)(0.26) == 0.0);
  CHECK(torus::inverse_power_kernel(1.0, 1.0)(1.0) == doctest::Approx(0.5));
  CHECK(torus::constant_kernel()(123.0) == 1.0);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(torus::gaussian_kernel(0.0), torus::BadParameterError);
  CHECK_THROWS_AS(torus::inverse_power_kernel(-1.0, 2.0), torus::BadParameterError);
  CHECK_THROWS_AS(torus::ball_indicator_kernel(-0.5), torus::BadParameterError);
}

TEST_CASE("kernel spec strings") {
  CHECK(torus::parse_kernel_spec("constant").label == "constant");
  const Kernel g = torus::parse_kernel_spec("gaussian:0.3");
  CHECK(g(0.09) == doctest::Approx(std::exp(-1.0)));
  CHECK(g.monotonicity == Monotonicity::strictly_decreasing);
  const Kernel ip = torus::parse_kernel_spec("invpow:1.0:2.0");
  CHECK(ip(1.0) == doctest::Approx(0.25));
  const Kernel ball = torus::parse_kernel_spec("ball:0.5");
  CHECK(ball(0.2) == 1.0);
  CHECK(ball.monotonicity == Monotonicity::non_increasing);

  for (const char* bad : {"", "gaussian", "gaussian:x", "gaussian:0.3:1", "ball:0", "foo:1", "invpow:1"})
    CHECK_THROWS_AS(torus::parse_kernel_spec(bad), torus::BadParameterError);
}

TEST_CASE("admissibility of the constant kernel") {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 5; ++i) {
    const auto rep = check_admissible(torus::constant_kernel(), test_support::random_params(rng));
    CHECK(rep.admissible);
    CHECK(rep.failure == AdmissibilityReport::Failure::none);
    CHECK(rep.integral_f2 == doctest::Approx(1.0).epsilon(1e-10));  // |D| = 1
  }
}

TEST_CASE("admissibility of the gaussian kernel") {
  const auto rep = check_admissible(torus::gaussian_kernel(0.3), TorusParams::square());
  CHECK(rep.admissible);
  CHECK(rep.integral_f2 > 0.0);
  CHECK(rep.integral_f2 < 1.0);
}

TEST_CASE("monotonicity violation carries a witness") {
  const Kernel increasing{[](double t) { return t; }, Monotonicity::non_increasing, "t"};
  const auto rep = check_admissible(increasing, TorusParams::square());
  CHECK_FALSE(rep.admissible);
  CHECK(rep.failure == AdmissibilityReport::Failure::not_monotone);
  CHECK(rep.witness_t1 < rep.witness_t2);
  CHECK(increasing(rep.witness_t1) < increasing(rep.witness_t2));
}

TEST_CASE("negativity is reported with the offending point") {
  const Kernel dipping{[](double t) { return 0.1 - t; }, Monotonicity::strictly_decreasing, "dip"};
  const auto rep = check_admissible(dipping, TorusParams::square());
  CHECK_FALSE(rep.admissible);
  CHECK(rep.failure == AdmissibilityReport::Failure::not_positive);
  CHECK(dipping(rep.witness_t1) < 0.0);
}

TEST_CASE("every builtin is admissible across a moduli sweep") {
  torus::QuadratureConfig cfg;
  cfg.rel_tol = 1e-7;
  cfg.abs_tol = 1e-8;  // the indicator integral is the slow one; accuracy is not at stake here
  std::mt19937_64 rng(79);
  const Kernel builtins[] = {torus::constant_kernel(), torus::gaussian_kernel(0.3),
                             torus::inverse_power_kernel(1.0, 2.0),
                             torus::ball_indicator_kernel(0.5)};
  for (int i = 0; i < 6; ++i) {
    const TorusParams p = test_support::random_params(rng);
    for (const Kernel& k : builtins) {
      CAPTURE(k.label);
      CHECK(check_admissible(k, p, cfg).admissible);
    }
  }
}

TEST_CASE("a covering indicator integrates to one") {
  // R beyond the circumradius makes f identically 1 on the cell
  const TorusParams p = TorusParams::square();
  const auto rep = check_admissible(torus::ball_indicator_kernel(0.72), p);
  CHECK(rep.integral_f2 == doctest::Approx(1.0).epsilon(1e-10));

  torus::QuadratureConfig cfg;
  cfg.rel_tol = 1e-7;
  cfg.abs_tol = 1e-8;
  const auto incircle = check_admissible(torus::ball_indicator_kernel(0.5), p, cfg);
  CHECK(incircle.integral_f2 == doctest::Approx(M_PI / 4.0).epsilon(1e-6));
}
