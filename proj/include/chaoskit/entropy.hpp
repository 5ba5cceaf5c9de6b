#pragma once

#include <vector>

namespace chaoskit {

// Probabilities over W cells: nonnegative, summing to 1 within 1e-12.
struct Distribution {
  std::vector<double> probabilities;
};

void validate_distribution(const Distribution& dist);

// Product distribution of two independent systems (W_A * W_B cells).
Distribution product_distribution(const Distribution& a, const Distribution& b);

struct TsallisResult {
  double q = 1.0;
  double k = 1.0;  // entropy unit
  double value = 0.0;
  bool outside_tested_regime = false;  // q <= 0 accepted but flagged
};

// Generalized entropy k * (1 - sum_i p_i^q) / (q - 1); within 1e-9 of
// q = 1 the Shannon limit -k * sum_i p_i ln p_i is used. Cells with
// p_i = 0 contribute nothing to either sum.
TsallisResult tsallis_entropy(const Distribution& dist, double q,
                              double k = 1.0);

// Composition law for independent systems, in units of k:
//   S_q(A+B)/k = S_q(A)/k + S_q(B)/k + (1-q) (S_q(A)/k) (S_q(B)/k).
// The cross-term is negative for q > 1 (subadditive composition) and
// positive for q < 1 (superadditive); it vanishes at q = 1.
struct AdditivityCheck {
  double lhs = 0.0;  // S_q of the product distribution, over k
  double rhs = 0.0;  // composed right-hand side, over k
  double residual = 0.0;
};

AdditivityCheck additivity_check(const Distribution& dist_a,
                                 const Distribution& dist_b, double q,
                                 double k = 1.0);

}  // namespace chaoskit
