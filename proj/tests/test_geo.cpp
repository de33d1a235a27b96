#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fixtures.hpp"
#include "handover/geo.hpp"
#include "oracles.hpp"

using namespace handover;
using handover::testing::offset;

TEST_SUITE("geo") {

TEST_CASE("great circle distance of a point to itself is zero") {
  const geo::GeoPoint p{58.38, 26.72};
  CHECK(geo::great_circle_distance(p, p) == 0.0);
}

TEST_CASE("one degree of longitude on the equator") {
  // 6371000 * pi / 180, computed by hand.
  const double expected = 111194.9266;
  CHECK(geo::great_circle_distance({0, 0}, {0, 1}) == doctest::Approx(expected).epsilon(1e-8));
  CHECK(std::abs(geo::great_circle_distance({0, 0}, {0, 1}) - expected) < 1.0);
}

TEST_CASE("Tartu to Tallinn agrees with an independent formula") {
  const geo::GeoPoint tartu{58.38, 26.72}, tallinn{59.44, 24.75};
  const double d = geo::great_circle_distance(tartu, tallinn);
  const double reference = oracle::vector_distance(tartu, tallinn);
  CHECK(std::abs(d - reference) / reference < 0.001);
  CHECK(d == doctest::Approx(163'000).epsilon(0.01));
}

TEST_CASE("distance across the antimeridian takes the short way") {
  CHECK(geo::great_circle_distance({0, 179.5}, {0, -179.5}) == doctest::Approx(111194.9266).epsilon(1e-6));
}

TEST_CASE("triangle inequality and symmetry on random triples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lat(-80, 80), lon(-180, 180);
  for (int i = 0; i < 1000; ++i) {
    const geo::GeoPoint a{lat(rng), lon(rng)}, b{lat(rng), lon(rng)}, c{lat(rng), lon(rng)};
    const double ab = geo::great_circle_distance(a, b);
    CHECK(ab == geo::great_circle_distance(b, a));
    CHECK(ab <= geo::great_circle_distance(a, c) + geo::great_circle_distance(c, b) + 1e-6);
  }
}

TEST_CASE("validation rejects out-of-range points and bad radii") {
  CHECK_THROWS_AS(geo::validate(geo::GeoPoint{95, 0}), std::invalid_argument);
  CHECK_THROWS_AS(geo::validate(geo::GeoPoint{0, -181}), std::invalid_argument);
  CHECK_THROWS_AS(geo::validate(geo::GeoPoint{NAN, 0}), std::invalid_argument);
  CHECK_THROWS_AS(geo::validate(geo::Circle{{0, 0}, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(geo::validate(geo::Circle{{0, 0}, -5.0}), std::invalid_argument);
  CHECK_NOTHROW(geo::validate(geo::Circle{{0, 0}, 1.0}));
}

TEST_CASE("intersection area fixed cases") {
  const geo::Circle a{offset(0), 100};
  SUBCASE("identical circles") {
    CHECK(geo::circle_intersection_area(a, a) == doctest::Approx(31415.93).epsilon(1e-6));
    CHECK(geo::union_area(a, a) == doctest::Approx(std::numbers::pi * 1e4));
    CHECK(geo::iou(a, a) == 1.0);
  }
  SUBCASE("disjoint circles") {
    const geo::Circle b{offset(300), 100};
    CHECK(geo::circle_intersection_area(a, b) == 0.0);
    CHECK(geo::iou(a, b) == 0.0);
    CHECK(geo::coverage_fraction(a, b) == 0.0);
    const geo::Circle small{offset(300), 50};
    CHECK(geo::union_area(small, a) == doctest::Approx(std::numbers::pi * (50.0 * 50.0 + 100.0 * 100.0)));
  }
  SUBCASE("concentric circles") {
    const geo::Circle big{offset(0), 200};
    CHECK(geo::iou(a, big) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(geo::coverage_fraction(a, big) == 1.0);
    CHECK(geo::coverage_fraction(big, a) == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("half-overlapping equal circles match Monte-Carlo") {
    const geo::Circle b{offset(100), 100};
    const auto mc = oracle::monte_carlo_areas(a, b, 42);
    CHECK(oracle::area_matches(geo::circle_intersection_area(a, b), mc.intersection));
    CHECK(oracle::area_matches(geo::union_area(a, b), mc.union_area));
    CHECK(oracle::area_matches(geo::coverage_fraction(a, b) * std::numbers::pi * 1e4, mc.intersection));
  }
}

TEST_CASE("lens formula against the closed form for equal circles") {
  // Equal radii r, distance d: 2 r^2 acos(d / 2r) - (d / 2) sqrt(4 r^2 - d^2).
  for (double d : {1.0, 50.0, 100.0, 150.0, 199.0}) {
    const double r = 100;
    const double closed = 2 * r * r * std::acos(d / (2 * r)) - d / 2 * std::sqrt(4 * r * r - d * d);
    CHECK(geo::lens_area(d, r, r) == doctest::Approx(closed).epsilon(1e-12));
  }
}

TEST_CASE("overlap rejects pairs beyond the projection range") {
  const geo::Circle a{{50.0, 10.0}, 1000}, b{{56.0, 10.0}, 1000};
  CHECK_THROWS_AS(geo::overlap(a, b), std::domain_error);
  CHECK_THROWS_AS(geo::iou(a, b), std::domain_error);
  CHECK_NOTHROW(geo::overlap(a, geo::Circle{{54.9, 10.0}, 1000}));
}

TEST_CASE("symmetry, bounds and monotonicity over random pairs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> radius(10, 3000), coord(-5000, 5000);
  for (int i = 0; i < 2000; ++i) {
    const geo::Circle a{offset(coord(rng), coord(rng)), radius(rng)};
    const geo::Circle b{offset(coord(rng), coord(rng)), radius(rng)};
    const double inter = geo::circle_intersection_area(a, b);
    CHECK(inter == geo::circle_intersection_area(b, a));
    CHECK(geo::union_area(a, b) == geo::union_area(b, a));
    CHECK(geo::iou(a, b) == geo::iou(b, a));

    const double small = std::min(a.radius, b.radius), large = std::max(a.radius, b.radius);
    CHECK(inter >= 0.0);
    CHECK(inter <= std::numbers::pi * small * small);
    CHECK(geo::union_area(a, b) >= std::numbers::pi * large * large * (1 - 1e-12));
    const double j = geo::iou(a, b);
    CHECK(j >= 0.0);
    CHECK(j <= 1.0);
  }

  std::uniform_real_distribution<double> r2(10, 500);
  for (int i = 0; i < 200; ++i) {
    const double ra = r2(rng), rb = r2(rng);
    double previous = std::numeric_limits<double>::infinity();
    for (double d = 0; d <= ra + rb + 10; d += (ra + rb) / 50) {
      const double area = geo::lens_area(d, ra, rb);
      CHECK(area <= previous);
      previous = area;
    }
  }
}

TEST_CASE("Monte-Carlo oracle on a handful of seeded pairs") {
  // The full 200-pair sweep runs in the acceptance suite.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> radius(50, 2000), unit(0, 1);
  for (int i = 0; i < 10; ++i) {
    const double ra = radius(rng), rb = radius(rng);
    const double d = unit(rng) * (ra + rb);
    const geo::Circle a{offset(0), ra}, b{offset(d * 0.6, d * 0.8), rb};
    const auto mc = oracle::monte_carlo_areas(a, b, 1000 + i, 200'000);
    const double inter = geo::circle_intersection_area(a, b);
    CHECK(std::abs(inter - mc.intersection) <= std::max(1.0, 0.02 * mc.intersection));
  }
}

}
