#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chaoskit/maps.hpp"

namespace chaoskit {

enum class Seeding { EvenlySpaced, UniformRandom };

// Ensemble escape experiment: seeds drawn from the initial interval are
// iterated until they first land in the escape interval (closed endpoints,
// tested after each application and once at iteration 0).
struct DecayConfig {
  MapSpec spec = logistic_map(4.0);
  double initial_lo = 0.2;
  double initial_hi = 0.2 + 1e-11;
  double escape_lo = 0.53;
  double escape_hi = 0.54;
  std::size_t n_points = 10000;
  Seeding seeding = Seeding::EvenlySpaced;
  std::uint64_t seed = 0;  // used by UniformRandom only
  std::size_t max_iterations = 100000;
};

void validate_config(const DecayConfig& config);

inline constexpr std::size_t kNeverEscaped =
    std::numeric_limits<std::size_t>::max();

struct SurvivalCurve {
  // survivors[t] = seeds not yet escaped after t iterations; nonincreasing,
  // survivors[t] + #(escape_times <= t) == n_points.
  std::vector<std::size_t> survivors;
  std::vector<std::size_t> escape_times;  // per seed; kNeverEscaped sentinel
  bool no_escapes = false;
};

SurvivalCurve run_escape(const DecayConfig& config);

struct DecayFit {
  double lambda = 0.0;     // per-iteration decay constant
  double half_life = 0.0;  // ln 2 / lambda
  double n0 = 0.0;         // fitted count at t = 0
  double r_squared = 0.0;
  std::size_t fit_lo = 0, fit_hi = 0;  // inclusive window of fitted t
};

class NoEscapesError : public std::runtime_error {
 public:
  NoEscapesError() : std::runtime_error("no seed reached the escape interval") {}
};
class NoDecayError : public std::runtime_error {
 public:
  explicit NoDecayError(double lambda)
      : std::runtime_error("fitted decay constant is not positive"),
        lambda_(lambda) {}
  double lambda() const { return lambda_; }

 private:
  double lambda_;
};
class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(std::size_t usable)
      : std::runtime_error("too few usable points for an exponential fit"),
        usable_(usable) {}
  std::size_t usable() const { return usable_; }

 private:
  std::size_t usable_;
};

// Least squares on (t, ln survivors[t]) over t >= skip_transient with
// survivors[t] >= min_survivors. Needs at least 3 usable points.
DecayFit fit_exponential(const SurvivalCurve& curve,
                         std::size_t skip_transient = 20,
                         std::size_t min_survivors = 100);

// Lagged scatter of inter-event intervals.
struct DelaySeries {
  std::size_t n_lag = 0;
  std::vector<std::pair<double, double>> pairs;  // (dt_m, dt_{m+n_lag})
};

// event_times must be strictly increasing with length >= n_lag + 2.
DelaySeries delay_series(const std::vector<double>& event_times,
                         std::size_t n_lag);

}  // namespace chaoskit
