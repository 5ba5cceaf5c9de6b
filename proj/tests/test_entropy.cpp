#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "chaoskit/entropy.hpp"
#include "chaoskit/rng.hpp"

using namespace chaoskit;

namespace {

Distribution uniform(std::size_t w) {
  return {std::vector<double>(w, 1.0 / static_cast<double>(w))};
}

Distribution random_dist(SplitMix64& rng, std::size_t w) {
  std::vector<double> p(w);
  double sum = 0.0;
  for (double& v : p) {
    v = rng.next_uniform01() + 1e-12;
    sum += v;
  }
  for (double& v : p) v /= sum;
  // Renormalize the largest cell so the total is exactly rounded to 1.
  double total = 0.0;
  for (double v : p) total += v;
  p[0] += 1.0 - total;
  return {p};
}

}  // namespace

TEST_CASE("worked entropy values") {
  CHECK(tsallis_entropy({{1.0}}, 2.0).value == 0.0);
  CHECK(tsallis_entropy({{1.0}}, 0.7).value == 0.0);
  CHECK(tsallis_entropy({{1.0}}, 1.0).value == 0.0);
  CHECK(tsallis_entropy(uniform(2), 2.0).value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(tsallis_entropy(uniform(2), 1.0).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));
  // Within 1e-9 of q = 1 the Shannon branch is used.
  CHECK(tsallis_entropy(uniform(2), 1.0 + 1e-10).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));
  // The entropy unit scales linearly.
  CHECK(tsallis_entropy(uniform(2), 2.0, 3.0).value ==
        doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("zero cells contribute nothing") {
  const Distribution with_zero{{0.5, 0.5, 0.0}};
  CHECK(tsallis_entropy(with_zero, 2.0).value ==
        tsallis_entropy(uniform(2), 2.0).value);
  CHECK(tsallis_entropy(with_zero, 1.0).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("invalid distributions and parameters are rejected") {
  CHECK_THROWS_AS(validate_distribution({{0.5, 0.4}}), std::domain_error);
  CHECK_THROWS_AS(validate_distribution({{0.5, -0.5, 1.0}}), std::domain_error);
  CHECK_THROWS_AS(validate_distribution({{}}), std::domain_error);
  CHECK_THROWS_AS(tsallis_entropy({{0.9, 0.2}}, 2.0), std::domain_error);
  CHECK_THROWS_AS(tsallis_entropy(uniform(2), std::nan("")), std::domain_error);
  CHECK_THROWS_AS(tsallis_entropy(uniform(2), 2.0, 0.0), std::domain_error);
}

TEST_CASE("q <= 0 is computed but flagged") {
  const TsallisResult r = tsallis_entropy({{0.25, 0.75}}, -0.5);
  CHECK(r.outside_tested_regime);
  CHECK(std::isfinite(r.value));
  CHECK_FALSE(tsallis_entropy({{0.25, 0.75}}, 0.5).outside_tested_regime);
}

TEST_CASE("worked pseudo-additivity example at q = 2") {
  const AdditivityCheck check = additivity_check(uniform(2), uniform(2), 2.0);
  CHECK(check.lhs == doctest::Approx(0.75).epsilon(1e-15));   // uniform-4
  CHECK(check.rhs == doctest::Approx(0.75).epsilon(1e-15));   // 0.5+0.5-0.25
  CHECK(check.residual < 1e-12);
}

TEST_CASE("ordinary additivity at q = 1") {
  SplitMix64 rng(31);
  for (int i = 0; i < 10; ++i) {
    const Distribution a = random_dist(rng, 2 + i % 5);
    const Distribution b = random_dist(rng, 3 + i % 4);
    const AdditivityCheck check = additivity_check(a, b, 1.0);
    CHECK(check.residual < 1e-12);
    CHECK(check.rhs ==
          doctest::Approx(tsallis_entropy(a, 1.0).value +
                          tsallis_entropy(b, 1.0).value).epsilon(1e-12));
  }
}

TEST_CASE("pseudo-additivity holds for 100 random (A, B, q) triples") {
  SplitMix64 rng(20240501);
  for (int i = 0; i < 100; ++i) {
    const Distribution a = random_dist(rng, 2 + i % 7);
    const Distribution b = random_dist(rng, 2 + (i / 2) % 6);
    const double q = rng.next_uniform(0.2, 3.0);
    const AdditivityCheck check = additivity_check(a, b, q);
    CHECK(check.residual < 1e-12);
  }
}

TEST_CASE("cross-term sign: subadditive past q = 1, superadditive before") {
  SplitMix64 rng(55);
  for (int i = 0; i < 50; ++i) {
    const Distribution a = random_dist(rng, 4);
    const Distribution b = random_dist(rng, 5);
    const double q = rng.next_uniform(0.2, 3.0);
    const double s_a = tsallis_entropy(a, q).value;
    const double s_b = tsallis_entropy(b, q).value;
    const AdditivityCheck check = additivity_check(a, b, q);
    const double cross = check.lhs - s_a - s_b;
    const double predicted = (1.0 - q) * s_a * s_b;
    if (std::abs(predicted) > 1e-10) {
      CHECK(cross * predicted > 0.0);  // same sign as (1-q) S_A S_B
    }
  }
}

TEST_CASE("uniform distribution maximizes entropy") {
  SplitMix64 rng(77);
  for (std::size_t w : {2, 3, 8}) {
    for (double q : {0.4, 1.0, 2.0, 3.0}) {
      const double top = tsallis_entropy(uniform(w), q).value;
      for (int i = 0; i < 100; ++i) {
        CHECK(tsallis_entropy(random_dist(rng, w), q).value <= top + 1e-12);
      }
    }
  }
}

TEST_CASE("continuity across q = 1") {
  SplitMix64 rng(123);
  for (int i = 0; i < 20; ++i) {
    const Distribution d = random_dist(rng, 3 + i % 5);
    const double at_one = tsallis_entropy(d, 1.0).value;
    CHECK(std::abs(tsallis_entropy(d, 1.0 + 1e-6).value - at_one) < 1e-4);
    CHECK(std::abs(tsallis_entropy(d, 1.0 - 1e-6).value - at_one) < 1e-4);
  }
}

TEST_CASE("entropy is nonnegative for q > 0") {
  SplitMix64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const Distribution d = random_dist(rng, 2 + i % 9);
    const double q = rng.next_uniform(0.05, 4.0);
    CHECK(tsallis_entropy(d, q).value >= 0.0);
  }
}
