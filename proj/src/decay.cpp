#include "chaoskit/decay.hpp"

#include <algorithm>
#include <cmath>

#include "chaoskit/rng.hpp"

namespace chaoskit {

void validate_config(const DecayConfig& config) {
  validate_spec(config.spec);
  if (!(config.initial_lo < config.initial_hi)) {
    throw std::domain_error("initial interval must have positive width");
  }
  if (!(config.escape_lo <= config.escape_hi)) {
    throw std::domain_error("escape interval is empty");
  }
  if (config.spec.kind == MapKind::Logistic) {
    if (config.initial_lo < 0.0 || config.initial_hi > 1.0 ||
        config.escape_lo < 0.0 || config.escape_hi > 1.0) {
      throw std::domain_error(
          "intervals must lie inside the logistic map's domain [0,1]");
    }
  }
  if (config.n_points < 1) {
    throw std::domain_error("n_points must be >= 1");
  }
  if (config.max_iterations < 1) {
    throw std::domain_error("max_iterations must be >= 1");
  }
}

SurvivalCurve run_escape(const DecayConfig& config) {
  validate_config(config);
  const std::size_t n = config.n_points;
  const double lo = config.initial_lo;
  const double span = config.initial_hi - config.initial_lo;
  const double j_lo = config.escape_lo;
  const double j_hi = config.escape_hi;

  SurvivalCurve curve;
  curve.escape_times.assign(n, kNeverEscaped);

  std::size_t max_escape = 0;
  bool any_escaped = false;
  for (std::size_t k = 0; k < n; ++k) {
    double x;
    if (config.seeding == Seeding::EvenlySpaced) {
      x = (n == 1) ? lo
                   : lo + span * static_cast<double>(k) /
                              static_cast<double>(n - 1);
    } else {
      x = lo + span * uniform01_at(config.seed, k);
    }
    if (x >= j_lo && x <= j_hi) {
      curve.escape_times[k] = 0;
      any_escaped = true;
      continue;
    }
    for (std::size_t t = 1; t <= config.max_iterations; ++t) {
      x = eval_map(config.spec, x);
      if (x >= j_lo && x <= j_hi) {
        curve.escape_times[k] = t;
        max_escape = std::max(max_escape, t);
        any_escaped = true;
        break;
      }
    }
  }
  curve.no_escapes = !any_escaped;

  const bool all_escaped =
      std::none_of(curve.escape_times.begin(), curve.escape_times.end(),
                   [](std::size_t t) { return t == kNeverEscaped; });
  const std::size_t horizon = all_escaped ? max_escape : config.max_iterations;

  // Order-independent tabulation: histogram escape times, then prefix-sum.
  std::vector<std::size_t> escaped_at(horizon + 1, 0);
  for (std::size_t t : curve.escape_times) {
    if (t != kNeverEscaped) ++escaped_at[t];
  }
  curve.survivors.resize(horizon + 1);
  std::size_t alive = n;
  for (std::size_t t = 0; t <= horizon; ++t) {
    alive -= escaped_at[t];
    curve.survivors[t] = alive;
  }
  return curve;
}

DecayFit fit_exponential(const SurvivalCurve& curve, std::size_t skip_transient,
                         std::size_t min_survivors) {
  if (curve.no_escapes) throw NoEscapesError();
  const std::size_t floor = std::max<std::size_t>(min_survivors, 1);

  std::vector<std::pair<double, double>> pts;  // (t, ln survivors)
  std::size_t fit_lo = 0, fit_hi = 0;
  for (std::size_t t = skip_transient; t < curve.survivors.size(); ++t) {
    const std::size_t s = curve.survivors[t];
    if (s < floor) break;
    if (pts.empty()) fit_lo = t;
    fit_hi = t;
    pts.emplace_back(static_cast<double>(t), std::log(static_cast<double>(s)));
  }
  if (pts.size() < 3) throw InsufficientDataError(pts.size());

  double mean_t = 0.0, mean_y = 0.0;
  for (const auto& [t, y] : pts) {
    mean_t += t;
    mean_y += y;
  }
  mean_t /= static_cast<double>(pts.size());
  mean_y /= static_cast<double>(pts.size());

  double s_tt = 0.0, s_ty = 0.0, s_yy = 0.0;
  for (const auto& [t, y] : pts) {
    const double dt = t - mean_t;
    const double dy = y - mean_y;
    s_tt += dt * dt;
    s_ty += dt * dy;
    s_yy += dy * dy;
  }
  const double slope = s_ty / s_tt;
  const double intercept = mean_y - slope * mean_t;

  DecayFit fit;
  fit.lambda = -slope;
  if (!(fit.lambda > 0.0)) throw NoDecayError(fit.lambda);
  fit.half_life = std::log(2.0) / fit.lambda;
  fit.n0 = std::exp(intercept);
  fit.fit_lo = fit_lo;
  fit.fit_hi = fit_hi;

  double ss_res = 0.0;
  for (const auto& [t, y] : pts) {
    const double r = y - (intercept + slope * t);
    ss_res += r * r;
  }
  fit.r_squared = (s_yy > 0.0) ? 1.0 - ss_res / s_yy : 0.0;
  return fit;
}

DelaySeries delay_series(const std::vector<double>& event_times,
                         std::size_t n_lag) {
  if (event_times.size() < n_lag + 2) {
    throw std::domain_error("delay_series needs at least n_lag + 2 event times");
  }
  for (std::size_t i = 0; i + 1 < event_times.size(); ++i) {
    if (!(event_times[i] < event_times[i + 1])) {
      throw std::domain_error("event times must be strictly increasing");
    }
  }
  const std::size_t n_intervals = event_times.size() - 1;
  std::vector<double> dt(n_intervals);
  for (std::size_t m = 0; m < n_intervals; ++m) {
    dt[m] = event_times[m + 1] - event_times[m];
  }
  DelaySeries series;
  series.n_lag = n_lag;
  series.pairs.reserve(n_intervals - n_lag);
  for (std::size_t m = 0; m + n_lag < n_intervals; ++m) {
    series.pairs.emplace_back(dt[m], dt[m + n_lag]);
  }
  return series;
}

}  // namespace chaoskit
