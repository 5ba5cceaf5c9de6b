#include "chaoskit/quantum.hpp"

#include <cmath>
#include <stdexcept>

#include "chaoskit/rng.hpp"

namespace chaoskit {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865476;
}

bool is_hermitian(const Observable& obs, double tol) {
  return (obs.matrix - obs.matrix.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool squares_to_identity(const Observable& obs, double tol) {
  const Eigen::MatrixXcd sq = obs.matrix * obs.matrix;
  const Eigen::MatrixXcd id =
      Eigen::MatrixXcd::Identity(sq.rows(), sq.cols());
  return (sq - id).cwiseAbs().maxCoeff() <= tol;
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd x;
  x << 0, 1, 1, 0;
  return x;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd z;
  z << 1, 0, 0, -1;
  return z;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

StateVector bell_singlet() {
  StateVector state;
  state.amplitudes = Eigen::VectorXcd::Zero(4);
  state.amplitudes(1) = Complex(kInvSqrt2, 0.0);   // |01>
  state.amplitudes(2) = Complex(-kInvSqrt2, 0.0);  // |10>
  return state;
}

CHSHObservables chsh_observables() {
  const Eigen::Matrix2cd x = pauli_x();
  const Eigen::Matrix2cd z = pauli_z();
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd s2 = (-z - x) * kInvSqrt2;
  const Eigen::Matrix2cd t2 = (z - x) * kInvSqrt2;

  CHSHObservables obs;
  obs.q.matrix = kron(z, id);
  obs.r.matrix = kron(x, id);
  obs.s.matrix = kron(id, s2);
  obs.t.matrix = kron(id, t2);
  return obs;
}

double expectation(const StateVector& state, const Observable& a,
                   const Observable& b) {
  const Eigen::Index dim = state.amplitudes.size();
  Eigen::MatrixXcd op;
  if (a.matrix.rows() * b.matrix.rows() == dim) {
    op = kron(a.matrix, b.matrix);
  } else if (a.matrix.rows() == dim && b.matrix.rows() == dim) {
    op = a.matrix * b.matrix;
  } else {
    throw std::invalid_argument("observable dimensions incompatible with state");
  }
  const Complex value = state.amplitudes.dot(op * state.amplitudes);
  if (std::abs(value.imag()) > 1e-9) {
    throw std::runtime_error("expectation value has a non-real residue");
  }
  return value.real();
}

CHSHResult chsh_quantum() {
  const StateVector psi = bell_singlet();
  const CHSHObservables obs = chsh_observables();
  CHSHResult result;
  result.e_qs = expectation(psi, obs.q, obs.s);
  result.e_rs = expectation(psi, obs.r, obs.s);
  result.e_rt = expectation(psi, obs.r, obs.t);
  result.e_qt = expectation(psi, obs.q, obs.t);
  result.s_value = result.e_qs + result.e_rs + result.e_rt - result.e_qt;
  return result;
}

CHSHClassicalMax chsh_classical_max(const std::array<int, 4>& signs) {
  CHSHClassicalMax best;
  best.max = -8;
  for (int q : {+1, -1}) {
    for (int r : {+1, -1}) {
      for (int s : {+1, -1}) {
        for (int t : {+1, -1}) {
          const int v = signs[0] * q * s + signs[1] * r * s +
                        signs[2] * r * t + signs[3] * q * t;
          if (v > best.max) {
            best.max = v;
            best.argmax.clear();
          }
          if (v == best.max) best.argmax.push_back({q, r, s, t, v});
        }
      }
    }
  }
  return best;
}

namespace {

// Response of the shared hidden variable to one setting. Settings are
// indexed 0..3 = Q, R, S, T.
int lhv_response(LhvStrategy strategy, int setting, double lambda) {
  switch (strategy) {
    case LhvStrategy::AlwaysPlus:
      return 1;
    case LhvStrategy::SharedCoin:
      return lambda < 0.5 ? 1 : -1;
    case LhvStrategy::Thresholds: {
      static constexpr double thresholds[4] = {0.5, 0.25, 0.375, 0.625};
      return lambda < thresholds[setting] ? 1 : -1;
    }
  }
  return 1;
}

}  // namespace

LhvEstimate lhv_simulate(std::size_t n_trials, std::uint64_t seed,
                         LhvStrategy strategy) {
  if (n_trials < 1000) {
    throw std::invalid_argument("lhv_simulate requires n_trials >= 1000");
  }
  // Per-pair tallies: sums of products and trial counts, pairs indexed
  // QS=0, RS=1, RT=2, QT=3.
  std::array<double, 4> sum{};
  std::array<std::size_t, 4> count{};

  for (std::size_t trial = 0; trial < n_trials; ++trial) {
    const double lambda = uniform01_at(seed, 3 * trial);
    const bool alice_q = uniform01_at(seed, 3 * trial + 1) < 0.5;
    const bool bob_s = uniform01_at(seed, 3 * trial + 2) < 0.5;
    const int a = lhv_response(strategy, alice_q ? 0 : 1, lambda);
    const int b = lhv_response(strategy, bob_s ? 2 : 3, lambda);
    const int pair = (alice_q ? 0 : 1) + (bob_s ? 0 : 2);  // QS,RS,QT,RT
    const int idx = (pair == 0) ? 0 : (pair == 1) ? 1 : (pair == 3) ? 2 : 3;
    sum[idx] += a * b;
    ++count[idx];
  }

  LhvEstimate est;
  std::array<double, 4> mean{};
  double var_sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (count[i] == 0) {
      throw std::runtime_error("a setting pair was never sampled");
    }
    mean[i] = sum[i] / static_cast<double>(count[i]);
    // Products are +/-1, so the sample variance is 1 - mean^2.
    const double var = 1.0 - mean[i] * mean[i];
    var_sum += var / static_cast<double>(count[i]);
  }
  est.e_qs = mean[0];
  est.e_rs = mean[1];
  est.e_rt = mean[2];
  est.e_qt = mean[3];
  est.s_value = mean[0] + mean[1] + mean[2] - mean[3];
  est.std_error = std::sqrt(var_sum);
  est.trials_per_pair = count;
  return est;
}

double GHZResult::probability(int s1, int s2, int s3) const {
  const int index = ((s1 < 0) ? 4 : 0) | ((s2 < 0) ? 2 : 0) | ((s3 < 0) ? 1 : 0);
  return p_outcome[static_cast<std::size_t>(index)];
}

GHZResult ghz_correlations(const GHZConfig& config) {
  const double s = std::sin(config.phi1 + config.phi2 + config.phi3);
  GHZResult result;
  double expectation = 0.0;
  for (int index = 0; index < 8; ++index) {
    const int s1 = (index & 4) ? -1 : 1;
    const int s2 = (index & 2) ? -1 : 1;
    const int s3 = (index & 1) ? -1 : 1;
    const int product = s1 * s2 * s3;
    const double p = 0.125 * (1.0 + product * s);
    result.p_outcome[static_cast<std::size_t>(index)] = p;
    expectation += product * p;
  }
  result.expectation = expectation;
  return result;
}

GHZContradictionReport ghz_contradiction() {
  GHZContradictionReport report;
  // Bits of `a`: v1(0), v1(pi/2), v2(0), v2(pi/2), v3(0), v3(pi/2);
  // bit set means -1.
  for (int a = 0; a < 64; ++a) {
    const int v1_0 = (a & 1) ? -1 : 1;
    const int v1_p = (a & 2) ? -1 : 1;
    const int v2_0 = (a & 4) ? -1 : 1;
    const int v2_p = (a & 8) ? -1 : 1;
    const int v3_0 = (a & 16) ? -1 : 1;
    const int v3_p = (a & 32) ? -1 : 1;

    const bool c[4] = {
        v1_p * v2_0 * v3_0 == 1,
        v1_0 * v2_p * v3_0 == 1,
        v1_0 * v2_0 * v3_p == 1,
        v1_p * v2_p * v3_p == -1,
    };
    for (int mask = 0; mask < 16; ++mask) {
      bool ok = true;
      for (int bit = 0; bit < 4; ++bit) {
        if ((mask & (1 << bit)) && !c[bit]) {
          ok = false;
          break;
        }
      }
      if (ok) ++report.subset_counts[static_cast<std::size_t>(mask)];
    }
  }
  return report;
}

}  // namespace chaoskit
