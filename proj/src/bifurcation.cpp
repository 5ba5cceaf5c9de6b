#include "chaoskit/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chaoskit {

double default_seed(MapKind kind) {
  switch (kind) {
    case MapKind::Quadratic:
      return 0.0;
    case MapKind::Logistic:
      return 0.5;
    case MapKind::Sine:
      return 1.5707963267948966;  // pi/2
  }
  return 0.5;
}

BifurcationDiagram bifurcation_diagram(MapKind kind, double param_lo,
                                       double param_hi, std::size_t n_param,
                                       double x0, std::size_t n_transient,
                                       std::size_t n_keep) {
  if (!(param_lo < param_hi)) {
    throw std::invalid_argument("bifurcation_diagram requires param_lo < param_hi");
  }
  if (n_param < 2) {
    throw std::invalid_argument("bifurcation_diagram requires n_param >= 2");
  }
  BifurcationDiagram diagram;
  diagram.spec_kind = kind;
  diagram.param_lo = param_lo;
  diagram.param_hi = param_hi;
  diagram.n_param = n_param;
  diagram.n_transient = n_transient;
  diagram.n_keep = n_keep;
  diagram.points.reserve(n_param * n_keep);

  const double span = param_hi - param_lo;
  for (std::size_t i = 0; i < n_param; ++i) {
    const double param =
        param_lo + span * static_cast<double>(i) / static_cast<double>(n_param - 1);
    const MapSpec spec{kind, param};
    const Orbit orbit = iterate_orbit(spec, x0, n_transient, n_keep);
    for (double x : orbit.values) diagram.points.emplace_back(param, x);
  }
  return diagram;
}

namespace {

// Transient iteration without per-step domain checks; the callers keep the
// parameter inside the window where orbits are bounded.
double advance(const MapSpec& spec, double x, std::size_t n) {
  const double a = spec.param;
  switch (spec.kind) {
    case MapKind::Quadratic:
      for (std::size_t i = 0; i < n; ++i) x = x * x + a;
      break;
    case MapKind::Logistic:
      for (std::size_t i = 0; i < n; ++i) x = a * x * (1.0 - x);
      break;
    case MapKind::Sine:
      for (std::size_t i = 0; i < n; ++i) x = a * std::sin(x);
      break;
  }
  return x;
}

}  // namespace

std::optional<std::size_t> detect_period(const MapSpec& spec,
                                         std::size_t max_period, double tol,
                                         std::size_t n_transient) {
  if (max_period < 1) {
    throw std::invalid_argument("detect_period requires max_period >= 1");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("detect_period requires tol > 0");
  }
  double x = advance(spec, default_seed(spec.kind), n_transient);
  if (!std::isfinite(x)) throw DivergenceError(n_transient, x, spec.param);

  // Window of 4*max_period comparison positions plus max_period lookahead.
  const std::size_t window = 4 * max_period;
  std::vector<double> vals(window + max_period);
  for (double& v : vals) {
    x = advance(spec, x, 1);
    v = x;
  }
  if (!std::isfinite(x)) throw DivergenceError(n_transient + vals.size(), x, spec.param);

  for (std::size_t p = 1; p <= max_period; ++p) {
    bool ok = true;
    for (std::size_t i = 0; i < window; ++i) {
      if (std::abs(vals[i + p] - vals[i]) >= tol) {
        ok = false;
        break;
      }
    }
    if (ok) return p;
  }
  return std::nullopt;
}

BracketFailure::BracketFailure(int level_reached, const std::string& what)
    : std::runtime_error(what), level_reached_(level_reached) {}

namespace {

// Search configuration for the period-doubling cascade of one map family.
struct CascadeConfig {
  double scan_start;   // parameter with a stable fixed point
  double scan_limit;   // never probe past this parameter
  double first_step;   // coarse scan step for level 1
  double second_step;  // scan step entering level 2 (under the first gap)
  double slope_gap_1;  // 2 / |d(multiplier)/dparam| near the first doubling
  double slope_gap_2;  // same for the second doubling
  double accuracy;     // target absolute accuracy of each located point
};

CascadeConfig cascade_config(MapKind kind) {
  switch (kind) {
    case MapKind::Logistic:
      // Fixed-point multiplier is 2 - A, so the level-1 slope gap is
      // exactly 2. The level-2 slope gap tracks the first cascade gap.
      return {2.5, 3.99, 0.1, 0.028, 2.0, 0.5, 1e-6};
    case MapKind::Sine:
      return {1.5, 3.1, 0.1, 0.022, 1.5, 0.4, 4e-6};
    default:
      throw std::invalid_argument(
          "find_bifurcation_points supports the logistic and sine maps");
  }
}

// Iterations needed to resolve period structure at parameter distance
// `dist` from a doubling point, where the cycle multiplier moves away
// from -1 at rate ~2/slope_gap per unit parameter. The log factor covers
// the decay of an O(0.1) deviation down to the matching tolerance.
std::size_t transient_for(std::size_t period, double slope_gap, double dist) {
  constexpr double kLogFactor = 20.0;  // ln(~0.2 / 1e-9)
  constexpr double kSafety = 2.0;
  const double t = kSafety * kLogFactor * static_cast<double>(period) *
                   slope_gap / (2.0 * dist);
  const double clamped = std::clamp(t, 1e4, 2.5e8);
  return static_cast<std::size_t>(clamped);
}

}  // namespace

BifurcationPoints find_bifurcation_points(MapKind kind, int n_levels) {
  if (n_levels < 3 || n_levels > 8) {
    throw std::invalid_argument("find_bifurcation_points requires 3 <= n_levels <= 8");
  }
  const CascadeConfig cfg = cascade_config(kind);

  BifurcationPoints result;
  result.spec_kind = kind;
  result.values.reserve(static_cast<std::size_t>(n_levels));

  auto detect_at = [&](double param, std::size_t max_period,
                       std::size_t transient) -> std::optional<std::size_t> {
    return detect_period(MapSpec{kind, param}, max_period, kPeriodTol, transient);
  };

  double lo = cfg.scan_start;
  double scan_step = cfg.first_step;
  double slope_gap = cfg.slope_gap_1;

  {
    const auto d0 = detect_at(lo, 1, kPeriodTransient);
    if (d0 != std::optional<std::size_t>{1}) {
      throw BracketFailure(0, "no stable fixed point at the scan start");
    }
  }

  for (int level = 1; level <= n_levels; ++level) {
    const std::size_t p_prev = std::size_t{1} << (level - 1);
    const std::size_t p_new = p_prev * 2;
    if (level == 2) slope_gap = cfg.slope_gap_2;
    if (level >= 3) {
      // The next gap shrinks by the universal factor ~4.67; a third of the
      // previous gap safely overestimates the multiplier slope scale.
      const std::size_t n = result.values.size();
      slope_gap = (result.values[n - 1] - result.values[n - 2]) / 3.0;
    }
    // Convergence below the doubling point is paced by the p_prev-cycle
    // multiplier, so transient budgets scale with p_prev.
    const std::size_t t_cap = transient_for(p_prev, slope_gap, cfg.accuracy);

    // Scan upward from lo until the detected period leaves p_prev, then
    // confirm the flip at full transient depth (a cheap probe close below
    // the doubling point can misread the slowly converging orbit).
    double hi = 0.0;
    bool bracketed = false;
    double step = scan_step;
    while (!bracketed) {
      const double probe = lo + step;
      if (probe > cfg.scan_limit) {
        std::ostringstream msg;
        msg << map_kind_name(kind) << " cascade: no period-" << p_new
            << " transition below " << cfg.scan_limit << " (level " << level
            << ")";
        throw BracketFailure(level, msg.str());
      }
      const auto d = detect_at(probe, p_new, transient_for(p_prev, slope_gap, step));
      if (d == std::optional<std::size_t>{p_prev}) {
        lo = probe;
        step *= 1.5;
        continue;
      }
      const auto confirmed = detect_at(probe, p_new, t_cap);
      if (confirmed == std::optional<std::size_t>{p_prev}) {
        lo = probe;
        step *= 1.5;
        continue;
      }
      hi = probe;
      bracketed = true;
    }

    // Bisect on "still period p_prev". A probe just below the doubling
    // point can misread the slowly converging orbit as already doubled
    // (and a too-low upper bracket is never revisited), so every flip is
    // confirmed at the full per-level transient before accepting it. The
    // opposite misread cannot happen: above the doubling point the old
    // period's residual is the macroscopic cycle splitting.
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      const std::size_t t_probe =
          transient_for(p_prev, slope_gap, std::max(hi - lo, cfg.accuracy));
      auto d = detect_at(mid, p_new, t_probe);
      if (d != std::optional<std::size_t>{p_prev} && t_probe < t_cap) {
        d = detect_at(mid, p_new, t_cap);
      }
      if (d == std::optional<std::size_t>{p_prev}) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double located = 0.5 * (lo + hi);
    result.values.push_back(located);

    // Next level: resume scanning just above the located point, probing
    // well inside the expected next gap (~21% of the current one).
    if (level >= 2) {
      const std::size_t n = result.values.size();
      scan_step = (result.values[n - 1] - result.values[n - 2]) / 16.0;
    } else {
      scan_step = cfg.second_step;
    }
    lo = located;
  }
  return result;
}

FeigenbaumEstimate estimate_feigenbaum(const BifurcationPoints& points) {
  const auto& a = points.values;
  if (a.size() < 3) {
    throw std::invalid_argument("estimate_feigenbaum needs at least 3 points");
  }
  FeigenbaumEstimate est;
  est.ratios.reserve(a.size() - 2);
  for (std::size_t k = 0; k + 2 < a.size(); ++k) {
    est.ratios.push_back((a[k + 1] - a[k]) / (a[k + 2] - a[k + 1]));
  }
  est.final = est.ratios.back();
  return est;
}

FeigenbaumEstimate estimate_feigenbaum(MapKind kind, int n_levels) {
  if (n_levels < 4) {
    throw std::invalid_argument("estimate_feigenbaum requires n_levels >= 4");
  }
  return estimate_feigenbaum(find_bifurcation_points(kind, n_levels));
}

}  // namespace chaoskit
