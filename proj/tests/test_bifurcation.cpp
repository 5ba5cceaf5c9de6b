#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "cascade_oracle.hpp"
#include "chaoskit/bifurcation.hpp"
#include "chaoskit/rng.hpp"

using namespace chaoskit;

TEST_CASE("diagram columns match known attractors") {
  // Columns land exactly on 0.8, 2.5 and 3.2 with this spacing.
  const BifurcationDiagram d =
      bifurcation_diagram(MapKind::Logistic, 0.8, 3.2, 25, 0.3, 4000, 24);
  REQUIRE(d.points.size() == 25 * 24);

  auto column = [&](double param) {
    std::vector<double> xs;
    for (const auto& [p, x] : d.points) {
      if (std::abs(p - param) < 1e-12) xs.push_back(x);
    }
    REQUIRE(xs.size() == 24);
    return xs;
  };

  for (double x : column(0.8)) CHECK(std::abs(x - 0.0) < 1e-6);
  for (double x : column(2.5)) CHECK(std::abs(x - 0.6) < 1e-6);

  // Exactly two clusters at tolerance 1e-6 in the period-2 column.
  const std::vector<double> xs = column(3.2);
  std::vector<double> reps;
  for (double x : xs) {
    bool found = false;
    for (double r : reps) found |= std::abs(x - r) < 1e-6;
    if (!found) reps.push_back(x);
  }
  CHECK(reps.size() == 2);
}

TEST_CASE("diagram honors its own bounds and is deterministic") {
  const BifurcationDiagram a =
      bifurcation_diagram(MapKind::Logistic, 2.9, 4.0, 40, 0.5, 500, 30);
  for (const auto& [param, x] : a.points) {
    CHECK(param >= 2.9);
    CHECK(param <= 4.0);
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
  const BifurcationDiagram b =
      bifurcation_diagram(MapKind::Logistic, 2.9, 4.0, 40, 0.5, 500, 30);
  CHECK(a.points == b.points);
}

TEST_CASE("diagram propagates divergence with the offending parameter") {
  try {
    bifurcation_diagram(MapKind::Logistic, 3.9, 4.3, 9, 0.5, 100, 10);
    FAIL("expected DivergenceError");
  } catch (const DivergenceError& e) {
    CHECK(e.param() > 4.0);
  }
}

TEST_CASE("detect_period identifies the canonical windows") {
  CHECK(detect_period(logistic_map(2.0), 64) == 1);
  CHECK(detect_period(logistic_map(3.2), 64) == 2);
  CHECK(detect_period(logistic_map(3.83), 64) == 3);
  CHECK(detect_period(logistic_map(3.99), 64) == std::nullopt);
}

TEST_CASE("cascade points match the analytic and multiplier oracles") {
  const BifurcationPoints pts = find_bifurcation_points(MapKind::Logistic, 3);
  REQUIRE(pts.values.size() == 3);

  CHECK(std::abs(pts.values[0] - 3.0) < 1e-6);           // fixed-point loses
  const double a2 = 1.0 + std::sqrt(6.0);                // period-2 loses
  CHECK(std::abs(pts.values[1] - a2) < 1e-6);

  // Independent route: Newton on the 4-cycle, bisect its multiplier
  // through -1. Frozen value from that oracle: 3.5440903595519.
  const double a3 = oracle::doubling_point(MapKind::Logistic, 3, 3.50, 0.01);
  CHECK(std::abs(a3 - 3.5440903595519) < 1e-9);
  CHECK(std::abs(pts.values[2] - a3) < 1e-5);

  SUBCASE("period ladder just above each point") {
    const double push1 = 0.25 * (pts.values[1] - pts.values[0]);
    CHECK(detect_period(logistic_map(pts.values[0] + push1), 2) == 2);
    const double push2 = 0.25 * (pts.values[2] - pts.values[1]);
    CHECK(detect_period(logistic_map(pts.values[1] + push2), 4) == 4);
    const double push3 = (pts.values[2] - pts.values[1]) / 20.0;
    CHECK(detect_period(logistic_map(pts.values[2] + push3), 8) == 8);
  }

  SUBCASE("strictly increasing with shrinking gaps") {
    CHECK(pts.values[0] < pts.values[1]);
    CHECK(pts.values[1] < pts.values[2]);
    CHECK(pts.values[2] - pts.values[1] < pts.values[1] - pts.values[0]);
  }

  SUBCASE("first gap ratio") {
    const FeigenbaumEstimate est = estimate_feigenbaum(pts);
    REQUIRE(est.ratios.size() == 1);
    CHECK(std::abs(est.final - 4.7514) < 0.05);
    CHECK(est.final ==
          (pts.values[1] - pts.values[0]) / (pts.values[2] - pts.values[1]));
  }
}

TEST_CASE("feigenbaum estimate arithmetic and guards") {
  // Pinned against the multiplier-oracle points A_1..A_5.
  BifurcationPoints pts{MapKind::Logistic,
                        {3.0000000000000, 3.4494897427832, 3.5440903595519,
                         3.5644072660954, 3.5687594195438}};
  const FeigenbaumEstimate est = estimate_feigenbaum(pts);
  REQUIRE(est.ratios.size() == 3);
  CHECK(est.ratios[0] == doctest::Approx(4.75144622).epsilon(1e-6));
  CHECK(est.ratios[1] == doctest::Approx(4.65625102).epsilon(1e-6));
  CHECK(est.ratios[2] == doctest::Approx(4.66824224).epsilon(1e-6));
  CHECK(est.final == est.ratios.back());
  for (double r : est.ratios) CHECK(r > 0.0);

  CHECK_THROWS_AS(find_bifurcation_points(MapKind::Logistic, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(find_bifurcation_points(MapKind::Logistic, 9),
                  std::invalid_argument);
  CHECK_THROWS_AS(find_bifurcation_points(MapKind::Quadratic, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_feigenbaum(MapKind::Logistic, 3),
                  std::invalid_argument);
}

TEST_CASE("sine orbits mirror under seed negation") {
  // Holds step for step whenever libm's sine is odd-symmetric bitwise;
  // verify that precondition as we go, then antisymmetry is exact.
  SplitMix64 rng(99);
  for (int trial = 0; trial < 4; ++trial) {
    const double a = rng.next_uniform(2.0, 2.7);
    const double x0 = rng.next_uniform(0.1, 2.0);
    double xp = x0, xm = -x0;
    bool odd_symmetric = true;
    for (int i = 0; i < 10000 && odd_symmetric; ++i) {
      const double sp = std::sin(xp);
      const double sm = std::sin(-xp);
      if (sm != -sp) {
        odd_symmetric = false;  // vacuous on this libm; nothing to assert
        break;
      }
      xp = a * sp;
      xm = a * std::sin(xm);
      CHECK(std::abs(xm + xp) <= 1e-12);
    }
    CHECK(odd_symmetric);
  }
}
