#include "chaoskit/maps.hpp"

#include <cmath>
#include <sstream>

namespace chaoskit {

const char* map_kind_name(MapKind kind) {
  switch (kind) {
    case MapKind::Quadratic:
      return "quadratic";
    case MapKind::Logistic:
      return "logistic";
    case MapKind::Sine:
      return "sine";
  }
  return "unknown";
}

void validate_spec(const MapSpec& spec) {
  if (!std::isfinite(spec.param)) {
    throw std::domain_error("map parameter must be finite");
  }
  if (spec.kind == MapKind::Logistic &&
      (spec.param < 0.0 || spec.param > 4.0)) {
    std::ostringstream msg;
    msg << "logistic map requires A <= 4 and A >= 0 ([0,1] is not invariant "
           "otherwise); got A = "
        << spec.param;
    throw std::domain_error(msg.str());
  }
}

DivergenceError::DivergenceError(std::size_t iteration, double value,
                                 double param)
    : std::runtime_error("orbit left the map's invariant domain at iteration " +
                         std::to_string(iteration) + " (x = " +
                         std::to_string(value) + ", param = " +
                         std::to_string(param) + ")"),
      iteration_(iteration),
      value_(value),
      param_(param) {}

double eval_map(const MapSpec& spec, double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("map input must be finite");
  }
  if (!std::isfinite(spec.param)) {
    throw std::domain_error("map parameter must be finite");
  }
  switch (spec.kind) {
    case MapKind::Quadratic:
      return x * x + spec.param;
    case MapKind::Logistic:
      if (x < 0.0 || x > 1.0) {
        throw std::domain_error("logistic map input must lie in [0,1]");
      }
      return spec.param * x * (1.0 - x);
    case MapKind::Sine:
      return spec.param * std::sin(x);
  }
  throw std::domain_error("unknown map kind");
}

namespace {

// Divergence test applied after each application. Only the logistic map
// has a bounded invariant domain; the others fail on non-finite iterates.
inline bool in_domain(const MapSpec& spec, double x) {
  if (!std::isfinite(x)) return false;
  if (spec.kind == MapKind::Logistic) return x >= 0.0 && x <= 1.0;
  return true;
}

}  // namespace

Orbit iterate_orbit(const MapSpec& spec, double x0, std::size_t n_transient,
                    std::size_t n_keep) {
  if (n_keep < 1) {
    throw std::invalid_argument("iterate_orbit requires n_keep >= 1");
  }
  Orbit orbit;
  orbit.x0 = x0;
  orbit.transient_len = n_transient;
  orbit.values.reserve(n_keep);

  double x = x0;
  if (!in_domain(spec, x)) throw DivergenceError(0, x, spec.param);
  for (std::size_t i = 0; i < n_transient; ++i) {
    x = eval_map(spec, x);
    if (!in_domain(spec, x)) throw DivergenceError(i + 1, x, spec.param);
  }
  for (std::size_t i = 0; i < n_keep; ++i) {
    x = eval_map(spec, x);
    if (!in_domain(spec, x)) {
      throw DivergenceError(n_transient + i + 1, x, spec.param);
    }
    orbit.values.push_back(x);
  }
  return orbit;
}

}  // namespace chaoskit
