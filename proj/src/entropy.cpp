#include "chaoskit/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace chaoskit {

void validate_distribution(const Distribution& dist) {
  if (dist.probabilities.empty()) {
    throw std::domain_error("distribution must have at least one cell");
  }
  double sum = 0.0;
  for (double p : dist.probabilities) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::domain_error("probabilities must be finite and nonnegative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::domain_error("probabilities must sum to 1 within 1e-12");
  }
}

Distribution product_distribution(const Distribution& a,
                                  const Distribution& b) {
  Distribution prod;
  prod.probabilities.reserve(a.probabilities.size() *
                             b.probabilities.size());
  for (double pa : a.probabilities) {
    for (double pb : b.probabilities) {
      prod.probabilities.push_back(pa * pb);
    }
  }
  return prod;
}

TsallisResult tsallis_entropy(const Distribution& dist, double q, double k) {
  validate_distribution(dist);
  if (!std::isfinite(q)) throw std::domain_error("entropic index must be finite");
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::domain_error("entropy unit k must be positive and finite");
  }

  TsallisResult result;
  result.q = q;
  result.k = k;
  result.outside_tested_regime = (q <= 0.0);

  if (std::abs(q - 1.0) < 1e-9) {
    double s = 0.0;
    for (double p : dist.probabilities) {
      if (p > 0.0) s -= p * std::log(p);
    }
    result.value = k * s;
  } else {
    double sum_pq = 0.0;
    for (double p : dist.probabilities) {
      if (p > 0.0) sum_pq += std::pow(p, q);
    }
    result.value = k * (1.0 - sum_pq) / (q - 1.0);
  }
  return result;
}

AdditivityCheck additivity_check(const Distribution& dist_a,
                                 const Distribution& dist_b, double q,
                                 double k) {
  const double s_a = tsallis_entropy(dist_a, q, k).value / k;
  const double s_b = tsallis_entropy(dist_b, q, k).value / k;
  const double s_ab =
      tsallis_entropy(product_distribution(dist_a, dist_b), q, k).value / k;

  AdditivityCheck check;
  check.lhs = s_ab;
  check.rhs = s_a + s_b + (1.0 - q) * s_a * s_b;
  check.residual = std::abs(check.lhs - check.rhs);
  return check;
}

}  // namespace chaoskit
