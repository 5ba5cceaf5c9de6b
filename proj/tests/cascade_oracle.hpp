#pragma once

// Test-only oracle for period-doubling parameters, independent of the
// production period-detection path: Newton on f^p(x) = x locates the
// attracting cycle, and the doubling point is bisected on its multiplier
// crossing -1.

#include <cmath>
#include <optional>

#include "chaoskit/maps.hpp"

namespace oracle {

inline double f(chaoskit::MapKind k, double a, double x) {
  return k == chaoskit::MapKind::Logistic ? a * x * (1.0 - x) : a * std::sin(x);
}
inline double df(chaoskit::MapKind k, double a, double x) {
  return k == chaoskit::MapKind::Logistic ? a * (1.0 - 2.0 * x) : a * std::cos(x);
}

// Multiplier of the attracting p-cycle reached from the critical point.
inline std::optional<double> cycle_multiplier(chaoskit::MapKind k, double a,
                                              int p) {
  double x = (k == chaoskit::MapKind::Logistic) ? 0.5 : 1.5707963267948966;
  for (int i = 0; i < 200000; ++i) x = f(k, a, x);
  for (int it = 0; it < 100; ++it) {
    double y = x, d = 1.0;
    for (int i = 0; i < p; ++i) {
      d *= df(k, a, y);
      y = f(k, a, y);
    }
    const double dF = d - 1.0;
    if (std::abs(dF) < 1e-8) return std::nullopt;
    const double step = (y - x) / dF;
    x -= step;
    if (std::abs(step) < 1e-14) break;
  }
  double y = x, d = 1.0;
  for (int i = 0; i < p; ++i) {
    d *= df(k, a, y);
    y = f(k, a, y);
  }
  if (std::abs(y - x) > 1e-10) return std::nullopt;
  return d;
}

// Parameter where period 2^level is born, bisected to ~1e-13.
inline double doubling_point(chaoskit::MapKind k, int level, double scan_from,
                             double scan_step) {
  const int p = 1 << (level - 1);
  double lo = scan_from, hi = 0.0;
  double step = scan_step;
  for (int tries = 0;; ++tries) {
    const double probe = lo + step;
    const auto m = cycle_multiplier(k, probe, p);
    if (m && *m > -1.0) {
      lo = probe;
      step *= 1.3;
      continue;
    }
    hi = probe;
    break;
  }
  for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    const auto m = cycle_multiplier(k, mid, p);
    if (m && *m > -1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
