#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "torus_spectra/moment.hpp"

using torus::clipped_voronoi;
using torus::ConvexPolygon;
using torus::Disc;
using torus::moment_convexity_check;
using torus::moment_lemma_check;
using torus::moment_theorem_check;
using torus::regular_polygon;
using torus::segment_from_area;
using torus::segment_moment;
using torus::segment_rearrangement_check;
using torus::Vec2;
using torus::vertex_count_check;

namespace {

const torus::RadialProfile kFlat = [](double) { return 1.0; };
const torus::RadialProfile kExp = [](double t) { return std::exp(-t); };

}  // namespace

TEST_CASE("segment area inversion") {
  const Disc unit{1.0};
  CHECK(segment_from_area(unit, 0.0).h == 1.0);
  CHECK(segment_from_area(unit, M_PI / 2.0).h == doctest::Approx(0.0).epsilon(1e-12));
  // bisection against the closed form, confirmed by a quadrature oracle
  CHECK(segment_from_area(unit, 0.5).h == doctest::Approx(0.5675398046001584).epsilon(1e-12));

  std::mt19937_64 rng(137);
  std::uniform_real_distribution<double> u(0.0, M_PI);
  for (int i = 0; i < 50; ++i) {
    const double s = u(rng);
    const auto seg = segment_from_area(unit, s);
    CHECK(torus::segment_area(unit, seg.h) == doctest::Approx(s).epsilon(1e-12));
  }

  const Disc big{2.0};
  CHECK(segment_from_area(big, 4.0 * M_PI).h == doctest::Approx(-2.0));
  CHECK_THROWS_AS(segment_from_area(unit, -0.1), torus::AreaOutOfRangeError);
  CHECK_THROWS_AS(segment_from_area(unit, 4.0), torus::AreaOutOfRangeError);
}

TEST_CASE("segment moment basics") {
  const Disc unit{1.0};
  CHECK(segment_moment(unit, 0.0, kExp) == 0.0);
  // flat profile: the moment is the area itself, on both sides of the half disc
  for (const double s : {0.2, 1.0, M_PI / 2.0, 2.5, 3.0})
    CHECK(segment_moment(unit, s, kFlat) == doctest::Approx(s).epsilon(1e-10));
  // half disc with f(t) = 1 - t: polar integral gives pi/6
  const auto cone = [](double t) { return 1.0 - t; };
  CHECK(segment_moment(unit, M_PI / 2.0, cone) == doctest::Approx(M_PI / 6.0).epsilon(1e-10));
}

TEST_CASE("segment moment grows with area") {
  const Disc d{1.3};
  double prev = 0.0;
  for (int i = 1; i <= 12; ++i) {
    const double s = i * (M_PI * 1.3 * 1.3) / 13.0;
    const double w = segment_moment(d, s, kExp);
    CHECK(w > prev);
    prev = w;
  }
}

TEST_CASE("moment convexity") {
  SUBCASE("flat profile is linear") {
    const auto rep = moment_convexity_check(Disc{1.0}, kFlat, 40);
    CHECK(rep.ok);
    CHECK(std::abs(rep.min_second_difference) <= 1e-9);
  }
  SUBCASE("decaying profiles are convex at several radii") {
    for (const double r : {0.5, 1.0, 2.0}) {
      const auto rep = moment_convexity_check(Disc{r}, kExp, 40);
      CAPTURE(r);
      CHECK(rep.ok);
      CHECK(rep.min_second_difference >= -1e-9);
    }
  }
  SUBCASE("an increasing profile is flagged with witnesses") {
    const auto rep = moment_convexity_check(Disc{1.0}, [](double t) { return t; }, 40);
    CHECK_FALSE(rep.ok);
    REQUIRE_FALSE(rep.violations.empty());
    const auto& v = rep.violations.front();
    CHECK(v.s0 < v.s1);
    CHECK(v.s1 < v.s2);
    CHECK(v.second_difference < -1e-9);
  }
}

TEST_CASE("two-point rearrangement bound") {
  const Disc unit{1.0};

  SUBCASE("boundary chord gives equality") {
    const Vec2 a(std::cos(0.4), std::sin(0.4));
    const Vec2 b(std::cos(-0.9), std::sin(-0.9));
    const auto rep = segment_rearrangement_check(unit, a, b, kExp);
    CHECK(rep.ok);
    CHECK(rep.rearranged_moment == doctest::Approx(rep.region_moment).epsilon(1e-8));
  }
  SUBCASE("flat profile is area-only") {
    const auto rep = segment_rearrangement_check(unit, {0.0, 0.7}, {0.4, -0.3}, kFlat);
    CHECK(rep.region_moment == doctest::Approx(rep.region_area).epsilon(1e-10));
    CHECK(rep.rearranged_moment == doctest::Approx(rep.region_area).epsilon(1e-10));
  }
  SUBCASE("randomized pairs") {
    std::mt19937_64 rng(139);
    std::uniform_real_distribution<double> radius(0.05, 0.98), angle(0.0, 2.0 * M_PI);
    int checked = 0;
    while (checked < 200) {
      const double tha = angle(rng), thb = angle(rng);
      const Vec2 a(radius(rng) * std::cos(tha), radius(rng) * std::sin(tha));
      const Vec2 b(radius(rng) * std::cos(thb), radius(rng) * std::sin(thb));
      try {
        const auto rep = segment_rearrangement_check(unit, a, b, kExp);
        CHECK(rep.ok);
        ++checked;
      } catch (const torus::DegenerateRegionError&) {
      }
    }
  }
  SUBCASE("degenerate configurations") {
    CHECK_THROWS_AS(segment_rearrangement_check(unit, {0.5, 0.0}, {0.9, 0.0}, kExp),
                    torus::DegenerateRegionError);
    CHECK_THROWS_AS(segment_rearrangement_check(unit, {0.5, 0.0}, {-0.5, 0.0}, kExp),
                    torus::DegenerateRegionError);
    CHECK_THROWS_AS(segment_rearrangement_check(unit, {0.0, 0.0}, {0.5, 0.5}, kExp),
                    torus::DegenerateRegionError);
    CHECK_THROWS_AS(segment_rearrangement_check(unit, {1.5, 0.0}, {0.0, 0.5}, kExp),
                    torus::BadParameterError);
  }
}

TEST_CASE("clipped voronoi partitions") {
  SUBCASE("single site keeps the whole domain") {
    const ConvexPolygon square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const auto cv = clipped_voronoi(square, {{0.3, 0.4}});
    REQUIRE(cv.cells.size() == 1);
    CHECK(cv.cells[0].area() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cv.vertex_counts[0] == 4);
  }
  SUBCASE("two mirrored sites split the square down the midline") {
    const ConvexPolygon square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const auto cv = clipped_voronoi(square, {{0.25, 0.5}, {0.75, 0.5}});
    REQUIRE(cv.cells.size() == 2);
    CHECK(cv.cells[0].area() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cv.cells[1].area() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cv.vertex_counts[0] == 4);
    CHECK(cv.vertex_counts[1] == 4);
    const auto count = vertex_count_check(cv);
    CHECK(count.total == 8);
    CHECK(count.bound == 12);
    CHECK(count.ok);
  }
  SUBCASE("random sites tile the hexagon") {
    std::mt19937_64 rng(149);
    const ConvexPolygon hex = regular_polygon(6, 3.0, 0.2);
    const auto sites = torus::random_sites_in_polygon(rng, hex, 8);
    const auto cv = clipped_voronoi(hex, sites);
    double total = 0.0;
    for (const auto& cell : cv.cells) total += cell.area();
    CHECK(total == doctest::Approx(hex.area()).epsilon(1e-10));

    // every sampled point of the domain belongs to the cell of its nearest site
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
      const Vec2 x(u(rng), u(rng));
      if (!hex.contains(x)) continue;
      std::size_t nearest = 0;
      for (std::size_t s = 1; s < sites.size(); ++s)
        if ((x - sites[s]).norm() < (x - sites[nearest]).norm()) nearest = s;
      CHECK(cv.cells[nearest].contains(x, 1e-9));
    }
  }
  SUBCASE("sites outside the domain are projected onto it") {
    const ConvexPolygon square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const auto cv = clipped_voronoi(square, {{0.5, 0.5}, {2.0, 0.5}});
    CHECK(cv.sites[1].x() == doctest::Approx(1.0));
    CHECK(cv.sites[1].y() == doctest::Approx(0.5));
  }
  SUBCASE("duplicate sites are rejected") {
    const ConvexPolygon square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK_THROWS_AS(clipped_voronoi(square, {{0.5, 0.5}, {0.5, 0.5 + 1e-10}}),
                    torus::DuplicateSitesError);
  }
}

TEST_CASE("vertex count bound on random configurations") {
  std::mt19937_64 rng(151);
  std::uniform_int_distribution<int> nsites(1, 12);
  for (int trial = 0; trial < 20; ++trial) {
    const ConvexPolygon hex = torus::random_convex_polygon(rng, 6);
    const auto sites = torus::random_sites_in_polygon(rng, hex, nsites(rng));
    const auto count = vertex_count_check(clipped_voronoi(hex, sites));
    CAPTURE(trial);
    CHECK(count.ok);
  }
  CHECK_THROWS_AS(vertex_count_check(clipped_voronoi(regular_polygon(8, 1.0), {{0.0, 0.0}})),
                  torus::DomainError);
}

TEST_CASE("moment theorem") {
  SUBCASE("centered single site is the equality case") {
    std::vector<Vec2> verts = regular_polygon(6, 2.0, 0.3).vertices();
    const Vec2 shift(0.7, -0.2);
    for (Vec2& v : verts) v += shift;
    const ConvexPolygon hex(verts);
    const auto rep = moment_theorem_check(hex, {shift}, kExp);
    CHECK(rep.ok);
    CHECK(rep.lhs == doctest::Approx(rep.rhs).epsilon(1e-9));
  }
  SUBCASE("off-center site is strictly worse") {
    const ConvexPolygon hex = regular_polygon(6, 2.0);
    const auto rep = moment_theorem_check(hex, {{0.3, 0.1}}, kExp);
    CHECK(rep.ok);
    CHECK(rep.margin > 1e-4);
  }
  SUBCASE("flat profile is always the equality case") {
    std::mt19937_64 rng(157);
    const ConvexPolygon hex = torus::random_convex_polygon(rng, 6);
    const auto sites = torus::random_sites_in_polygon(rng, hex, 5);
    const auto rep = moment_theorem_check(hex, sites, kFlat);
    CHECK(rep.lhs == doctest::Approx(rep.rhs).epsilon(1e-10));
  }
  SUBCASE("randomized hexagons and site sets") {
    std::mt19937_64 rng(163);
    std::uniform_int_distribution<int> nsites(1, 8);
    for (int trial = 0; trial < 15; ++trial) {
      const ConvexPolygon hex = torus::random_convex_polygon(rng, 6);
      const auto sites = torus::random_sites_in_polygon(rng, hex, nsites(rng));
      const auto rep = moment_theorem_check(hex, sites, kExp);
      CAPTURE(trial);
      CHECK(rep.ok);
    }
  }
}

TEST_CASE("moment lemma") {
  SUBCASE("the centered regular polygon is the equality case") {
    const auto rep = moment_lemma_check(regular_polygon(5, 1.7, 0.4), kExp);
    CHECK(rep.ok);
    CHECK(rep.lhs == doctest::Approx(rep.rhs).epsilon(1e-9));
  }
  SUBCASE("an anisotropic stretch of the same area loses moment") {
    std::vector<Vec2> verts = regular_polygon(6, 2.0).vertices();
    for (Vec2& v : verts) v = Vec2(1.6 * v.x(), v.y() / 1.6);
    const auto rep = moment_lemma_check(ConvexPolygon(verts), kExp);
    CHECK(rep.ok);
    CHECK(rep.margin > 1e-3);
  }
  SUBCASE("flat profile sees only the area") {
    std::mt19937_64 rng(167);
    const ConvexPolygon poly = torus::random_convex_polygon(rng, 7);
    const auto rep = moment_lemma_check(poly, kFlat);
    CHECK(rep.lhs == doctest::Approx(rep.rhs).epsilon(1e-10));
  }
  SUBCASE("polygons away from the origin are translated toward it") {
    std::vector<Vec2> verts = regular_polygon(4, 1.0).vertices();
    for (Vec2& v : verts) v += Vec2(10.0, 3.0);
    const ConvexPolygon far(verts);
    const auto rep = moment_lemma_check(far, kExp);
    CHECK(rep.ok);
    CHECK_THROWS_AS(moment_lemma_check(far, kExp, {}, false), torus::OriginOutsideError);
  }
}

TEST_CASE("polygon generators") {
  const ConvexPolygon pent = regular_polygon(5, 2.5);
  CHECK(pent.size() == 5);
  CHECK(pent.area() == doctest::Approx(2.5).epsilon(1e-12));

  std::mt19937_64 rng(173);
  for (const int n : {3, 6, 9, 12}) {
    const ConvexPolygon poly = torus::random_convex_polygon(rng, n);
    CHECK(static_cast<int>(poly.size()) == n);
  }

  std::mt19937_64 rng_a(41), rng_b(41);
  const ConvexPolygon p1 = torus::random_convex_polygon(rng_a, 6);
  const ConvexPolygon p2 = torus::random_convex_polygon(rng_b, 6);
  REQUIRE(p1.size() == p2.size());
  for (std::size_t i = 0; i < p1.size(); ++i)
    CHECK((p1.vertices()[i] - p2.vertices()[i]).norm() == 0.0);
}
