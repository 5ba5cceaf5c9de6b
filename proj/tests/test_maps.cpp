#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "chaoskit/maps.hpp"
#include "chaoskit/rng.hpp"

using namespace chaoskit;

TEST_CASE("eval_map on the three families") {
  CHECK(eval_map(logistic_map(4.0), 0.5) == 1.0);
  CHECK(eval_map(logistic_map(4.0), 1.0) == 0.0);
  CHECK(eval_map(quadratic_map(0.0), 0.5) == 0.25);
  CHECK(eval_map(sine_map(2.2), 1.5707963267948966) ==
        doctest::Approx(2.2).epsilon(1e-15));
}

TEST_CASE("eval_map domain errors") {
  CHECK_THROWS_AS(eval_map(logistic_map(4.0), std::nan("")), std::domain_error);
  CHECK_THROWS_AS(eval_map(logistic_map(4.0), INFINITY), std::domain_error);
  CHECK_THROWS_AS(eval_map({MapKind::Logistic, std::nan("")}, 0.5),
                  std::domain_error);
  CHECK_THROWS_AS(eval_map(logistic_map(4.0), 1.5), std::domain_error);
  CHECK_THROWS_AS(eval_map(logistic_map(4.0), -0.1), std::domain_error);
}

TEST_CASE("validate_spec bounds the logistic parameter") {
  CHECK_NOTHROW(validate_spec(logistic_map(4.0)));
  CHECK_NOTHROW(validate_spec(logistic_map(0.0)));
  CHECK_THROWS_AS(validate_spec(logistic_map(4.5)), std::domain_error);
  CHECK_THROWS_AS(validate_spec(logistic_map(-0.5)), std::domain_error);
  CHECK_THROWS_AS(validate_spec({MapKind::Sine, INFINITY}), std::domain_error);
  CHECK_NOTHROW(validate_spec(sine_map(-3.0)));
}

TEST_CASE("orbit settles on the analytic fixed point 1 - 1/A") {
  const Orbit orbit = iterate_orbit(logistic_map(2.0), 0.3, 1000, 100);
  REQUIRE(orbit.values.size() == 100);
  for (double x : orbit.values) CHECK(x == doctest::Approx(0.5).epsilon(1e-9));
}

namespace {

// Brute-force root isolation of f(f(x)) = x on [0,1], excluding the fixed
// points of f itself: scan for sign changes, then bisect.
std::vector<double> period2_roots(double a) {
  auto g = [a](double x) {
    const double fx = a * x * (1.0 - x);
    return a * fx * (1.0 - fx) - x;
  };
  auto fixed = [a](double x) {
    return std::abs(a * x * (1.0 - x) - x) < 1e-7;
  };
  std::vector<double> roots;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    double lo = static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n;
    if (g(lo) == 0.0 && !fixed(lo)) {
      roots.push_back(lo);
      continue;
    }
    if (g(lo) * g(hi) >= 0.0) continue;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (g(lo) * g(mid) <= 0.0)
        hi = mid;
      else
        lo = mid;
    }
    const double root = 0.5 * (lo + hi);
    if (!fixed(root)) roots.push_back(root);
  }
  return roots;
}

}  // namespace

TEST_CASE("orbit alternates between the period-2 roots of f(f(x)) = x") {
  const std::vector<double> roots = period2_roots(3.2);
  REQUIRE(roots.size() == 2);
  // Frozen from the isolation oracle; also matches the quadratic-formula
  // values (A+1 +- sqrt((A+1)(A-3)))/(2A).
  CHECK(roots[0] == doctest::Approx(0.5130445095326298).epsilon(1e-9));
  CHECK(roots[1] == doctest::Approx(0.7994554904673702).epsilon(1e-9));

  const Orbit orbit = iterate_orbit(logistic_map(3.2), 0.3, 5000, 64);
  for (std::size_t i = 0; i < orbit.values.size(); ++i) {
    const double target = orbit.values[i] < 0.65 ? roots[0] : roots[1];
    CHECK(std::abs(orbit.values[i] - target) < 1e-6);
    if (i > 0) {
      CHECK(std::abs(orbit.values[i] - orbit.values[i - 1]) > 0.1);
    }
  }
}

TEST_CASE("zero is a fixed seed of the logistic map") {
  const Orbit orbit = iterate_orbit(logistic_map(3.7), 0.0, 100, 50);
  for (double x : orbit.values) CHECK(x == 0.0);
}

TEST_CASE("orbit divergence raises an indexed error") {
  // Logistic specs past A = 4 can be built directly; the orbit must fail
  // the moment an iterate leaves [0,1].
  const MapSpec broken{MapKind::Logistic, 4.5};
  CHECK_THROWS_AS(iterate_orbit(broken, 0.5, 10, 10), DivergenceError);
  try {
    iterate_orbit(broken, 0.5, 10, 10);
  } catch (const DivergenceError& e) {
    CHECK(e.iteration() == 1);  // 4.5 * 0.25 = 1.125 on the first step
    CHECK(e.param() == 4.5);
    CHECK(e.value() == doctest::Approx(1.125));
  }

  CHECK_THROWS_AS(iterate_orbit(quadratic_map(1.0), 0.0, 100, 10),
                  DivergenceError);
}

TEST_CASE("range closure: logistic maps [0,1] into [0,1]") {
  SplitMix64 rng(2024);
  for (int i = 0; i < 2000; ++i) {
    const double a = rng.next_uniform(0.0, 4.0);
    const double x = rng.next_uniform01();
    const double y = eval_map(logistic_map(a), x);
    CHECK(y >= 0.0);
    CHECK(y <= 1.0);
    CHECK(y <= a / 4.0 + 1e-15);
  }
  CHECK(eval_map(logistic_map(4.0), 0.5) == 1.0);  // attains A/4
}

TEST_CASE("fixed point residual stays at rounding level") {
  for (double a = 1.01; a <= 4.0; a += 0.01) {
    const double xf = 1.0 - 1.0 / a;
    CHECK(std::abs(eval_map(logistic_map(a), xf) - xf) < 1e-12);
  }
}

TEST_CASE("below A = 1 every orbit is drawn to zero") {
  // At A = 1 - eps the pull is A^n per step, so 2000 iterations resolve
  // the vanishing only up to A ~ 0.993; sample below that knee and pin
  // the hardest sampled case explicitly.
  SplitMix64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const double a = rng.next_uniform(0.0, 0.98);
    const double x0 = rng.next_uniform01();
    const Orbit orbit = iterate_orbit(logistic_map(a), x0, 2000, 1);
    CHECK(std::abs(orbit.values[0]) < 1e-6);
  }
  CHECK(std::abs(iterate_orbit(logistic_map(0.98), 0.999, 2000, 1).values[0]) <
        1e-6);
}

TEST_CASE("sine map is odd in x") {
  SplitMix64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const double a = rng.next_uniform(-3.0, 3.0);
    const double x = rng.next_uniform(-10.0, 10.0);
    CHECK(std::abs(eval_map(sine_map(a), -x) + eval_map(sine_map(a), x)) <=
          1e-15);
  }
}

TEST_CASE("repeated orbit runs are bitwise identical") {
  const Orbit a = iterate_orbit(logistic_map(3.9), 0.11, 500, 200);
  const Orbit b = iterate_orbit(logistic_map(3.9), 0.11, 500, 200);
  CHECK(a.values == b.values);
  // Each stored pair reproduces one map application exactly.
  for (std::size_t i = 0; i + 1 < a.values.size(); ++i) {
    CHECK(eval_map(logistic_map(3.9), a.values[i]) == a.values[i + 1]);
  }
}

TEST_CASE("splitmix64 matches its reference stream") {
  // First output for seed 0 is the published SplitMix64 value.
  CHECK(splitmix64_at(0, 0) == 0xE220A8397B1DCDAFULL);
  SplitMix64 rng(0);
  CHECK(rng.next_u64() == 0xE220A8397B1DCDAFULL);
  const double u = uniform01_at(123, 0);
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
  CHECK(uniform01_at(123, 0) == u);
}
