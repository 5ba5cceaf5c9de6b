#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace chaoskit {

// One-dimensional iterated maps:
//   Quadratic: x -> x^2 + c
//   Logistic:  x -> A x (1 - x)   on [0,1], A in [0,4]
//   Sine:      x -> A sin(x)
enum class MapKind { Quadratic, Logistic, Sine };

struct MapSpec {
  MapKind kind;
  double param;  // c for Quadratic, A for Logistic/Sine
};

inline MapSpec quadratic_map(double c) { return {MapKind::Quadratic, c}; }
inline MapSpec logistic_map(double a) { return {MapKind::Logistic, a}; }
inline MapSpec sine_map(double a) { return {MapKind::Sine, a}; }

const char* map_kind_name(MapKind kind);

// Throws std::domain_error if param is non-finite or, for the logistic
// map, outside [0,4] (the interval [0,1] is not invariant past A=4).
void validate_spec(const MapSpec& spec);

// An orbit escaped the map's invariant domain (logistic iterate left
// [0,1], or any iterate became non-finite).
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::size_t iteration, double value, double param);
  std::size_t iteration() const { return iteration_; }
  double value() const { return value_; }
  double param() const { return param_; }

 private:
  std::size_t iteration_;
  double value_;
  double param_;
};

// Single application of the map. Pure; identical inputs give bitwise
// identical outputs. Throws std::domain_error for non-finite x, non-finite
// param, or a logistic x outside [0,1].
double eval_map(const MapSpec& spec, double x);

// Post-transient iterates. values[0] is the (n_transient+1)-th iterate of
// x0; consecutive entries satisfy values[i+1] == eval_map(spec, values[i])
// bitwise.
struct Orbit {
  double x0 = 0.0;
  std::size_t transient_len = 0;
  std::vector<double> values;
};

// Discards n_transient iterates, records the next n_keep. Throws
// DivergenceError if an iterate leaves the invariant domain.
Orbit iterate_orbit(const MapSpec& spec, double x0, std::size_t n_transient,
                    std::size_t n_keep);

}  // namespace chaoskit
