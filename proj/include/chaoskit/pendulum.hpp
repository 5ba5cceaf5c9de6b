#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace chaoskit {

// Vertices of the unit-circle equilateral triangle at 90, 210 and 330
// degrees, the standard three-magnet arrangement.
std::array<Eigen::Vector2d, 3> default_magnet_triangle();

// Planar bob with linear damping, a spring pull toward the origin and
// three softened inverse-square magnet attractions:
//   a = -damping v - restoring x
//       + strength sum_i (p_i - x) / (|p_i - x|^2 + offset^2)^(3/2).
struct PendulumParams {
  std::array<Eigen::Vector2d, 3> magnets = default_magnet_triangle();
  double damping = 0.2;
  double restoring = 0.5;
  double magnet_strength = 1.0;
  double plane_offset = 0.25;
  double step = 0.01;
  std::size_t max_steps = 100000;
  double capture_radius = 0.1;
  double capture_speed = 0.05;
};

void validate_params(const PendulumParams& params);

struct PendulumState {
  Eigen::Vector2d position;
  Eigen::Vector2d velocity;
};

Eigen::Vector2d acceleration(const PendulumParams& params,
                             const Eigen::Vector2d& position,
                             const Eigen::Vector2d& velocity);

// One fixed-size classical Runge-Kutta step of (position, velocity).
PendulumState rk4_step(const PendulumParams& params, const PendulumState& s);

// Kinetic + spring potential + magnet potential; nonincreasing along
// trajectories when damping > 0.
double mechanical_energy(const PendulumParams& params, const PendulumState& s);

class IntegrationError : public std::runtime_error {
 public:
  explicit IntegrationError(std::size_t step_index);
  std::size_t step_index() const { return step_index_; }

 private:
  std::size_t step_index_;
};

inline constexpr int kUnresolved = 0;  // attractor indices are 1..3

struct TrajectoryResult {
  int attractor = kUnresolved;
  std::size_t steps = 0;
};

// Integrates until the bob sits within capture_radius of one magnet at
// speed below capture_speed for 100 consecutive steps, or max_steps pass.
// Throws IntegrationError if the state becomes non-finite.
TrajectoryResult integrate_trajectory(const PendulumParams& params,
                                      const Eigen::Vector2d& x0,
                                      const Eigen::Vector2d& v0);

// Raster of attractor indices; cells are row-major with row 0 at the top
// of the window (y_hi) and column 0 at x_lo, one trajectory per cell
// center released at rest.
struct BasinImage {
  int width = 0, height = 0;
  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
  std::vector<std::uint8_t> cells;  // values 0..3 (0 = unresolved)
  std::size_t integration_failures = 0;

  std::uint8_t at(int ix, int iy) const {
    return cells[static_cast<std::size_t>(iy) * static_cast<std::size_t>(width) +
                 static_cast<std::size_t>(ix)];
  }
  double cell_center_x(int ix) const {
    return x_lo + (x_hi - x_lo) * (ix + 0.5) / width;
  }
  double cell_center_y(int iy) const {
    return y_hi - (y_hi - y_lo) * (iy + 0.5) / height;
  }
};

// Deterministic for fixed inputs regardless of n_workers; integration
// failures are recorded as unresolved cells and counted.
BasinImage compute_basins(const PendulumParams& params, int width, int height,
                          double x_lo, double x_hi, double y_lo, double y_hi,
                          unsigned n_workers = 1);

}  // namespace chaoskit
