#pragma once

#include <vector>

#include "hiertriple/scene.hpp"

namespace hiertriple {

/// Linear-beta schedule tables, 1-based time steps t in [1, T].
struct DiffusionSchedule {
  int T = 0;
  std::vector<double> beta;       // beta[t-1]
  std::vector<double> alpha;      // 1 - beta_t
  std::vector<double> alpha_bar;  // prod_{i<=t} alpha_i

  double beta_t(int t) const { return beta.at(t - 1); }
  double alpha_t(int t) const { return alpha.at(t - 1); }
  double alpha_bar_t(int t) const { return alpha_bar.at(t - 1); }
};

/// Betas rise linearly from beta_start to beta_end over T steps.
/// Throws std::invalid_argument unless 0 < beta_start <= beta_end < 1, T >= 1.
DiffusionSchedule build_schedule(int T = 1000, double beta_start = 1e-4,
                                 double beta_end = 0.02);

/// x_t = sqrt(alpha_bar_t) x0 + sqrt(1 - alpha_bar_t) eps.
std::vector<double> forward_noise(const std::vector<double>& x0,
                                  const std::vector<double>& eps, int t,
                                  const DiffusionSchedule& sched);

/// Deterministic inverse: x0_bar = (x_t - sqrt(1 - alpha_bar_t) eps_hat)
///                                  / sqrt(alpha_bar_t).
std::vector<double> recover_denoised(const std::vector<double>& x_t,
                                     const std::vector<double>& eps_hat, int t,
                                     const DiffusionSchedule& sched);

/// Pose vector [x, y, cos, sin] per object in ascending-id order; categories
/// and sizes stay on the reference layout.
std::vector<double> flatten_pose(const Layout& layout);

/// Rebuilds a layout from a pose vector; orientations are renormalized to
/// unit length. Throws std::invalid_argument on size mismatch.
Layout unflatten_pose(const Layout& reference, const std::vector<double>& pose);

}  // namespace hiertriple
