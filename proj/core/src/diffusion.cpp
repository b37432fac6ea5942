#include "hiertriple/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hiertriple {

DiffusionSchedule build_schedule(int T, double beta_start, double beta_end) {
  if (T < 1) throw std::invalid_argument("build_schedule: T must be >= 1");
  if (!(beta_start > 0.0) || !(beta_end < 1.0) || !(beta_start <= beta_end))
    throw std::invalid_argument("build_schedule: need 0 < beta_start <= beta_end < 1");

  DiffusionSchedule s;
  s.T = T;
  s.beta.resize(T);
  s.alpha.resize(T);
  s.alpha_bar.resize(T);
  double prod = 1.0;
  for (int t = 1; t <= T; ++t) {
    const double b =
        T == 1 ? beta_start
               : beta_start + (beta_end - beta_start) * (t - 1) / double(T - 1);
    s.beta[t - 1] = b;
    s.alpha[t - 1] = 1.0 - b;
    prod *= s.alpha[t - 1];
    s.alpha_bar[t - 1] = prod;
  }
  return s;
}

namespace {
void check_step(int t, const DiffusionSchedule& sched) {
  if (t < 1 || t > sched.T)
    throw std::invalid_argument("diffusion: step t out of range [1, T]");
}
}  // namespace

std::vector<double> forward_noise(const std::vector<double>& x0,
                                  const std::vector<double>& eps, int t,
                                  const DiffusionSchedule& sched) {
  check_step(t, sched);
  if (x0.size() != eps.size())
    throw std::invalid_argument("forward_noise: shape mismatch");
  const double ab = sched.alpha_bar_t(t);
  const double c0 = std::sqrt(ab);
  const double c1 = std::sqrt(1.0 - ab);
  std::vector<double> out(x0.size());
  for (size_t i = 0; i < x0.size(); ++i) out[i] = c0 * x0[i] + c1 * eps[i];
  return out;
}

std::vector<double> recover_denoised(const std::vector<double>& x_t,
                                     const std::vector<double>& eps_hat, int t,
                                     const DiffusionSchedule& sched) {
  check_step(t, sched);
  if (x_t.size() != eps_hat.size())
    throw std::invalid_argument("recover_denoised: shape mismatch");
  const double ab = sched.alpha_bar_t(t);
  const double c1 = std::sqrt(1.0 - ab);
  const double inv = 1.0 / std::sqrt(ab);
  std::vector<double> out(x_t.size());
  for (size_t i = 0; i < x_t.size(); ++i) out[i] = (x_t[i] - c1 * eps_hat[i]) * inv;
  return out;
}

std::vector<double> flatten_pose(const Layout& layout) {
  std::vector<const SceneObject*> ordered;
  for (const auto& o : layout.objects) ordered.push_back(&o);
  std::sort(ordered.begin(), ordered.end(),
            [](const SceneObject* a, const SceneObject* b) { return a->id < b->id; });
  std::vector<double> v;
  v.reserve(ordered.size() * 4);
  for (const SceneObject* o : ordered) {
    v.push_back(o->position.x);
    v.push_back(o->position.y);
    v.push_back(o->orientation.x);
    v.push_back(o->orientation.y);
  }
  return v;
}

Layout unflatten_pose(const Layout& reference, const std::vector<double>& pose) {
  if (pose.size() != reference.objects.size() * 4)
    throw std::invalid_argument("unflatten_pose: size mismatch");
  Layout out = reference;
  std::vector<SceneObject*> ordered;
  for (auto& o : out.objects) ordered.push_back(&o);
  std::sort(ordered.begin(), ordered.end(),
            [](const SceneObject* a, const SceneObject* b) { return a->id < b->id; });
  for (size_t i = 0; i < ordered.size(); ++i) {
    ordered[i]->position.x = pose[4 * i];
    ordered[i]->position.y = pose[4 * i + 1];
    Vec2 orient{pose[4 * i + 2], pose[4 * i + 3]};
    const double n = norm(orient);
    ordered[i]->orientation = n > 0.0 ? orient / n : Vec2{1.0, 0.0};
  }
  return out;
}

}  // namespace hiertriple
