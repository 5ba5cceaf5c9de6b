#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace chaoskit {

using Complex = std::complex<double>;

// Normalized amplitudes over 2^n computational basis states, ordered
// lexicographically with qubit 1 as the most significant position
// (|00>, |01>, |10>, |11> for two qubits).
struct StateVector {
  Eigen::VectorXcd amplitudes;
};

// Hermitian measurement operator with +/-1 outcomes (squares to identity).
struct Observable {
  Eigen::MatrixXcd matrix;
};

bool is_hermitian(const Observable& obs, double tol = 1e-12);
bool squares_to_identity(const Observable& obs, double tol = 1e-12);

// Pauli bit-flip and phase-flip matrices.
Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_z();

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Two-qubit singlet (|01> - |10>)/sqrt(2).
StateVector bell_singlet();

// The four measurement operators of the maximally violating arrangement:
// Q = Z and R = X on qubit 1, S = (-Z-X)/sqrt(2) and T = (Z-X)/sqrt(2) on
// qubit 2, each embedded into 4x4 with an identity on the other qubit.
struct CHSHObservables {
  Observable q, r, s, t;
};
CHSHObservables chsh_observables();

// <psi| A (x) B |psi> for 2x2 single-qubit observables, or <psi| A B |psi>
// for pre-embedded commuting 4x4 observables. Throws if the imaginary
// residue exceeds 1e-9.
double expectation(const StateVector& state, const Observable& a,
                   const Observable& b);

struct CHSHResult {
  double e_qs = 0.0, e_rs = 0.0, e_rt = 0.0, e_qt = 0.0;
  double s_value = 0.0;  // e_qs + e_rs + e_rt - e_qt
};

// Quantum value of the CHSH combination on the singlet: 2*sqrt(2).
CHSHResult chsh_quantum();

// Exhaustive search over deterministic +/-1 assignments of Q, R, S, T.
struct CHSHAssignment {
  int q = 1, r = 1, s = 1, t = 1;
  int value = 0;  // signs[0] QS + signs[1] RS + signs[2] RT + signs[3] QT
};
struct CHSHClassicalMax {
  int max = 0;
  std::vector<CHSHAssignment> argmax;
};
CHSHClassicalMax chsh_classical_max(
    const std::array<int, 4>& signs = {+1, +1, +1, -1});

// Local hidden-variable response models: a shared uniform lambda in [0,1)
// determines all four +/-1 answers per trial.
enum class LhvStrategy {
  AlwaysPlus,   // every response +1
  SharedCoin,   // every response sign(lambda - 1/2)
  Thresholds,   // per-setting thresholds on lambda
};

struct LhvEstimate {
  double e_qs = 0.0, e_rs = 0.0, e_rt = 0.0, e_qt = 0.0;
  double s_value = 0.0;
  double std_error = 0.0;  // of s_value
  std::array<std::size_t, 4> trials_per_pair{};  // QS, RS, RT, QT
};

// Monte Carlo run of a local strategy with random setting choices;
// bitwise reproducible for a fixed seed.
LhvEstimate lhv_simulate(std::size_t n_trials, std::uint64_t seed,
                         LhvStrategy strategy = LhvStrategy::Thresholds);

// Three-particle interference with one phase per particle.
struct GHZConfig {
  double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0;
};

struct GHZResult {
  // p_outcome[index] with index bits (s1<0)<<2 | (s2<0)<<1 | (s3<0);
  // P(s1,s2,s3) = (1/8) [1 + s1 s2 s3 sin(phi1+phi2+phi3)].
  std::array<double, 8> p_outcome{};
  double expectation = 0.0;  // sum s1 s2 s3 P = sin(phi1+phi2+phi3)

  double probability(int s1, int s2, int s3) const;
};

GHZResult ghz_correlations(const GHZConfig& config);

// Exhaustive test of pre-assigned +/-1 values v_i(phi), phi in {0, pi/2},
// against the four perfect-correlation constraints
//   v1(pi/2) v2(0) v3(0) = +1,   v1(0) v2(pi/2) v3(0) = +1,
//   v1(0) v2(0) v3(pi/2) = +1,   v1(pi/2) v2(pi/2) v3(pi/2) = -1.
struct GHZContradictionReport {
  // subset_counts[mask] = assignments (of 64) satisfying every constraint
  // in mask, bits 0..3 = the four constraints above in order.
  std::array<std::size_t, 16> subset_counts{};

  std::size_t satisfying_all_four() const { return subset_counts[15]; }
  std::size_t satisfying_first_three() const { return subset_counts[7]; }
};

GHZContradictionReport ghz_contradiction();

}  // namespace chaoskit
