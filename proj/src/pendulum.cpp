#include "chaoskit/pendulum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace chaoskit {

std::array<Eigen::Vector2d, 3> default_magnet_triangle() {
  const double c = 0.8660254037844386;  // cos(30 deg)
  return {Eigen::Vector2d(0.0, 1.0), Eigen::Vector2d(-c, -0.5),
          Eigen::Vector2d(c, -0.5)};
}

void validate_params(const PendulumParams& params) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(params.damping) || params.damping < 0.0)
    throw std::domain_error("damping must be finite and >= 0");
  if (!finite(params.restoring) || params.restoring < 0.0)
    throw std::domain_error("restoring must be finite and >= 0");
  if (!finite(params.magnet_strength) || params.magnet_strength <= 0.0)
    throw std::domain_error("magnet_strength must be finite and > 0");
  if (!finite(params.plane_offset) || params.plane_offset <= 0.0)
    throw std::domain_error("plane_offset must be finite and > 0");
  if (!finite(params.step) || params.step <= 0.0)
    throw std::domain_error("step must be finite and > 0");
  if (!finite(params.capture_radius) || params.capture_radius <= 0.0)
    throw std::domain_error("capture_radius must be finite and > 0");
  if (!finite(params.capture_speed) || params.capture_speed <= 0.0)
    throw std::domain_error("capture_speed must be finite and > 0");
  if (params.max_steps < 1) throw std::domain_error("max_steps must be >= 1");
  for (int i = 0; i < 3; ++i) {
    if (!params.magnets[i].allFinite())
      throw std::domain_error("magnet positions must be finite");
    for (int j = i + 1; j < 3; ++j) {
      if (params.magnets[i] == params.magnets[j])
        throw std::domain_error("magnet positions must be distinct");
    }
  }
}

Eigen::Vector2d acceleration(const PendulumParams& params,
                             const Eigen::Vector2d& position,
                             const Eigen::Vector2d& velocity) {
  const double d2 = params.plane_offset * params.plane_offset;
  // Independent per-magnet distances first so the three root/reciprocal
  // chains overlap in the pipeline.
  Eigen::Vector2d delta[3];
  double w[3];
  for (int i = 0; i < 3; ++i) {
    delta[i] = params.magnets[i] - position;
    w[i] = delta[i].squaredNorm() + d2;
  }
  for (int i = 0; i < 3; ++i) {
    const double inv = 1.0 / std::sqrt(w[i]);
    w[i] = params.magnet_strength * (inv * inv * inv);
  }
  Eigen::Vector2d a = -params.damping * velocity - params.restoring * position;
  for (int i = 0; i < 3; ++i) a += w[i] * delta[i];
  return a;
}

PendulumState rk4_step(const PendulumParams& params, const PendulumState& s) {
  const double h = params.step;

  const Eigen::Vector2d k1x = s.velocity;
  const Eigen::Vector2d k1v = acceleration(params, s.position, s.velocity);

  const Eigen::Vector2d k2x = s.velocity + (0.5 * h) * k1v;
  const Eigen::Vector2d k2v = acceleration(
      params, s.position + (0.5 * h) * k1x, s.velocity + (0.5 * h) * k1v);

  const Eigen::Vector2d k3x = s.velocity + (0.5 * h) * k2v;
  const Eigen::Vector2d k3v = acceleration(
      params, s.position + (0.5 * h) * k2x, s.velocity + (0.5 * h) * k2v);

  const Eigen::Vector2d k4x = s.velocity + h * k3v;
  const Eigen::Vector2d k4v =
      acceleration(params, s.position + h * k3x, s.velocity + h * k3v);

  PendulumState out;
  out.position = s.position + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
  out.velocity = s.velocity + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  return out;
}

double mechanical_energy(const PendulumParams& params, const PendulumState& s) {
  double e = 0.5 * s.velocity.squaredNorm() +
             0.5 * params.restoring * s.position.squaredNorm();
  const double d2 = params.plane_offset * params.plane_offset;
  for (const auto& magnet : params.magnets) {
    e -= params.magnet_strength /
         std::sqrt((magnet - s.position).squaredNorm() + d2);
  }
  return e;
}

IntegrationError::IntegrationError(std::size_t step_index)
    : std::runtime_error("pendulum state became non-finite at step " +
                         std::to_string(step_index)),
      step_index_(step_index) {}

TrajectoryResult integrate_trajectory(const PendulumParams& params,
                                      const Eigen::Vector2d& x0,
                                      const Eigen::Vector2d& v0) {
  const double r2 = params.capture_radius * params.capture_radius;
  const double s2 = params.capture_speed * params.capture_speed;
  constexpr std::size_t kConfirmSteps = 100;

  PendulumState state{x0, v0};
  int candidate = kUnresolved;
  std::size_t streak = 0;
  for (std::size_t step = 1; step <= params.max_steps; ++step) {
    state = rk4_step(params, state);
    if (!state.position.allFinite() || !state.velocity.allFinite()) {
      throw IntegrationError(step);
    }
    int here = kUnresolved;
    if (state.velocity.squaredNorm() < s2) {
      for (int i = 0; i < 3; ++i) {
        if ((state.position - params.magnets[i]).squaredNorm() <= r2) {
          here = i + 1;
          break;
        }
      }
    }
    if (here != kUnresolved && here == candidate) {
      if (++streak >= kConfirmSteps) return {here, step};
    } else {
      candidate = here;
      streak = (here == kUnresolved) ? 0 : 1;
    }
  }
  return {kUnresolved, params.max_steps};
}

namespace {

// Basin rasters integrate four cells per batch, one trajectory per lane.
// Lane arithmetic is elementwise IEEE (vsqrtpd/vdivpd round identically to
// their scalar forms), so cell values do not depend on batch packing, and
// batches are fixed groups of four row neighbors regardless of worker
// count.
constexpr int kLanes = 4;

struct LaneState {
  alignas(32) double px[kLanes], py[kLanes], vx[kLanes], vy[kLanes];
};

inline void reciprocal_sqrt_lanes(double* s) {
#if defined(__AVX2__)
  const __m256d one = _mm256_set1_pd(1.0);
  _mm256_store_pd(s, _mm256_div_pd(one, _mm256_sqrt_pd(_mm256_load_pd(s))));
#else
  for (int l = 0; l < kLanes; ++l) s[l] = 1.0 / std::sqrt(s[l]);
#endif
}

inline void accel_lanes(const PendulumParams& p, const double* px,
                        const double* py, const double* vx, const double* vy,
                        double* ax, double* ay) {
  const double d2 = p.plane_offset * p.plane_offset;
  alignas(32) double w[3][kLanes];
  double dx[3][kLanes], dy[3][kLanes];
  for (int i = 0; i < 3; ++i) {
    const double mx = p.magnets[i].x();
    const double my = p.magnets[i].y();
    for (int l = 0; l < kLanes; ++l) {
      dx[i][l] = mx - px[l];
      dy[i][l] = my - py[l];
      w[i][l] = dx[i][l] * dx[i][l] + dy[i][l] * dy[i][l] + d2;
    }
  }
  for (int i = 0; i < 3; ++i) reciprocal_sqrt_lanes(w[i]);
  for (int l = 0; l < kLanes; ++l) {
    double axl = -p.damping * vx[l] - p.restoring * px[l];
    double ayl = -p.damping * vy[l] - p.restoring * py[l];
    for (int i = 0; i < 3; ++i) {
      const double c = p.magnet_strength * (w[i][l] * w[i][l] * w[i][l]);
      axl += c * dx[i][l];
      ayl += c * dy[i][l];
    }
    ax[l] = axl;
    ay[l] = ayl;
  }
}

void rk4_lanes(const PendulumParams& p, LaneState& b) {
  const double h = p.step;
  double k1vx[kLanes], k1vy[kLanes], k2vx[kLanes], k2vy[kLanes];
  double k3vx[kLanes], k3vy[kLanes], k4vx[kLanes], k4vy[kLanes];
  double k2x[kLanes], k2y[kLanes], k3x[kLanes], k3y[kLanes];
  double tx[kLanes], ty[kLanes], tvx[kLanes], tvy[kLanes];

  accel_lanes(p, b.px, b.py, b.vx, b.vy, k1vx, k1vy);
  for (int l = 0; l < kLanes; ++l) {
    tx[l] = b.px[l] + 0.5 * h * b.vx[l];
    ty[l] = b.py[l] + 0.5 * h * b.vy[l];
    tvx[l] = b.vx[l] + 0.5 * h * k1vx[l];
    tvy[l] = b.vy[l] + 0.5 * h * k1vy[l];
  }
  accel_lanes(p, tx, ty, tvx, tvy, k2vx, k2vy);
  for (int l = 0; l < kLanes; ++l) {
    k2x[l] = b.vx[l] + 0.5 * h * k1vx[l];
    k2y[l] = b.vy[l] + 0.5 * h * k1vy[l];
    tx[l] = b.px[l] + 0.5 * h * k2x[l];
    ty[l] = b.py[l] + 0.5 * h * k2y[l];
    tvx[l] = b.vx[l] + 0.5 * h * k2vx[l];
    tvy[l] = b.vy[l] + 0.5 * h * k2vy[l];
  }
  accel_lanes(p, tx, ty, tvx, tvy, k3vx, k3vy);
  for (int l = 0; l < kLanes; ++l) {
    k3x[l] = b.vx[l] + 0.5 * h * k2vx[l];
    k3y[l] = b.vy[l] + 0.5 * h * k2vy[l];
    tx[l] = b.px[l] + h * k3x[l];
    ty[l] = b.py[l] + h * k3y[l];
    tvx[l] = b.vx[l] + h * k3vx[l];
    tvy[l] = b.vy[l] + h * k3vy[l];
  }
  accel_lanes(p, tx, ty, tvx, tvy, k4vx, k4vy);
  for (int l = 0; l < kLanes; ++l) {
    const double k1x = b.vx[l], k1y = b.vy[l];
    const double k4x = b.vx[l] + h * k3vx[l];
    const double k4y = b.vy[l] + h * k3vy[l];
    b.px[l] += (h / 6.0) * (k1x + 2.0 * k2x[l] + 2.0 * k3x[l] + k4x);
    b.py[l] += (h / 6.0) * (k1y + 2.0 * k2y[l] + 2.0 * k3y[l] + k4y);
    b.vx[l] += (h / 6.0) * (k1vx[l] + 2.0 * k2vx[l] + 2.0 * k3vx[l] + k4vx[l]);
    b.vy[l] += (h / 6.0) * (k1vy[l] + 2.0 * k2vy[l] + 2.0 * k3vy[l] + k4vy[l]);
  }
}

// Integrates up to kLanes cells; writes attractor indices into out[l] and
// returns the number of lanes whose state became non-finite.
int integrate_lane_batch(const PendulumParams& p, const LaneState& start,
                         int n_lanes, std::uint8_t* out) {
  const double r2 = p.capture_radius * p.capture_radius;
  const double s2 = p.capture_speed * p.capture_speed;
  constexpr int kConfirmSteps = 100;

  LaneState b = start;
  int cand[kLanes] = {};
  int streak[kLanes] = {};
  std::uint8_t res[kLanes] = {};
  bool done[kLanes] = {};
  int failures = 0;
  int n_done = 0;
  for (int l = n_lanes; l < kLanes; ++l) {
    done[l] = true;
    ++n_done;
  }

  for (std::size_t step = 1; step <= p.max_steps && n_done < kLanes; ++step) {
    rk4_lanes(p, b);
    for (int l = 0; l < n_lanes; ++l) {
      if (done[l]) continue;
      if (!std::isfinite(b.px[l]) || !std::isfinite(b.py[l]) ||
          !std::isfinite(b.vx[l]) || !std::isfinite(b.vy[l])) {
        done[l] = true;
        ++n_done;
        ++failures;
        continue;
      }
      int here = 0;
      if (b.vx[l] * b.vx[l] + b.vy[l] * b.vy[l] < s2) {
        for (int i = 0; i < 3; ++i) {
          const double ddx = b.px[l] - p.magnets[i].x();
          const double ddy = b.py[l] - p.magnets[i].y();
          if (ddx * ddx + ddy * ddy <= r2) {
            here = i + 1;
            break;
          }
        }
      }
      if (here != kUnresolved && here == cand[l]) {
        if (++streak[l] >= kConfirmSteps) {
          res[l] = static_cast<std::uint8_t>(here);
          done[l] = true;
          ++n_done;
        }
      } else {
        cand[l] = here;
        streak[l] = (here == kUnresolved) ? 0 : 1;
      }
    }
  }
  for (int l = 0; l < n_lanes; ++l) out[l] = res[l];
  return failures;
}

}  // namespace

BasinImage compute_basins(const PendulumParams& params, int width, int height,
                          double x_lo, double x_hi, double y_lo, double y_hi,
                          unsigned n_workers) {
  validate_params(params);
  if (width < 2 || height < 2) {
    throw std::invalid_argument("compute_basins requires width, height >= 2");
  }
  if (!(x_lo < x_hi) || !(y_lo < y_hi)) {
    throw std::invalid_argument("compute_basins requires a nondegenerate window");
  }

  BasinImage image;
  image.width = width;
  image.height = height;
  image.x_lo = x_lo;
  image.x_hi = x_hi;
  image.y_lo = y_lo;
  image.y_hi = y_hi;
  image.cells.assign(static_cast<std::size_t>(width) *
                         static_cast<std::size_t>(height),
                     kUnresolved);

  std::atomic<int> next_row{0};
  std::atomic<std::size_t> failures{0};
  auto worker = [&]() {
    for (;;) {
      const int iy = next_row.fetch_add(1);
      if (iy >= height) return;
      const double y = image.cell_center_y(iy);
      std::uint8_t* row =
          image.cells.data() + static_cast<std::size_t>(iy) * width;
      for (int ix0 = 0; ix0 < width; ix0 += kLanes) {
        const int n_lanes = std::min(kLanes, width - ix0);
        LaneState start{};
        for (int l = 0; l < n_lanes; ++l) {
          start.px[l] = image.cell_center_x(ix0 + l);
          start.py[l] = y;
          start.vx[l] = 0.0;
          start.vy[l] = 0.0;
        }
        const int batch_failures =
            integrate_lane_batch(params, start, n_lanes, row + ix0);
        if (batch_failures > 0) {
          failures.fetch_add(static_cast<std::size_t>(batch_failures),
                             std::memory_order_relaxed);
        }
      }
    }
  };

  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  image.integration_failures = failures.load();
  return image;
}

}  // namespace chaoskit
