#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chaoskit/maps.hpp"

namespace chaoskit {

// Natural seed for long-run behavior: the critical point of each map.
double default_seed(MapKind kind);

struct BifurcationDiagram {
  MapKind spec_kind;
  double param_lo = 0.0, param_hi = 0.0;
  std::size_t n_param = 0, n_transient = 0, n_keep = 0;
  std::vector<std::pair<double, double>> points;  // (param, x), param-major
};

// Post-transient iterates for n_param evenly spaced parameters in
// [param_lo, param_hi]. Points are ordered by parameter index, then
// iterate index. DivergenceErrors carry the offending parameter.
BifurcationDiagram bifurcation_diagram(MapKind kind, double param_lo,
                                       double param_hi, std::size_t n_param,
                                       double x0, std::size_t n_transient,
                                       std::size_t n_keep);

inline constexpr double kPeriodTol = 1e-9;
inline constexpr std::size_t kPeriodTransient = 10000;

// Smallest period p <= max_period such that post-transient iterates repeat
// within tol over a verification window of 4*max_period iterates; nullopt
// if none does (chaotic at this resolution).
std::optional<std::size_t> detect_period(const MapSpec& spec,
                                         std::size_t max_period,
                                         double tol = kPeriodTol,
                                         std::size_t n_transient = kPeriodTransient);

// Parameter values where period 2^n is born (n = 1..n_levels), strictly
// increasing with strictly decreasing gaps.
struct BifurcationPoints {
  MapKind spec_kind;
  std::vector<double> values;
};

// Successive gap ratios of the doubling cascade; the limit is the
// universal constant ~4.6692 shared by unimodal maps.
struct FeigenbaumEstimate {
  std::vector<double> ratios;  // ratios[k] = (A_{k+1}-A_k)/(A_{k+2}-A_{k+1})
  double final = 0.0;          // last ratio
};

// The period transition could not be bracketed inside the search range.
class BracketFailure : public std::runtime_error {
 public:
  BracketFailure(int level_reached, const std::string& what);
  int level_reached() const { return level_reached_; }

 private:
  int level_reached_;
};

// Locates the period-doubling parameters by bisecting on integer period
// change. Supported for the logistic and sine maps (their cascades run in
// the direction of increasing parameter). n_levels in [3, 8]: cycle
// matching at tol 1e-9 is unreliable past period 256 in 64-bit arithmetic.
BifurcationPoints find_bifurcation_points(MapKind kind, int n_levels);

// ratios[k] = (A_{k+1} - A_k) / (A_{k+2} - A_{k+1}) for k = 1..n_levels-2;
// final is the last (best-converged) ratio. Requires n_levels >= 4.
FeigenbaumEstimate estimate_feigenbaum(MapKind kind, int n_levels);
FeigenbaumEstimate estimate_feigenbaum(const BifurcationPoints& points);

}  // namespace chaoskit
