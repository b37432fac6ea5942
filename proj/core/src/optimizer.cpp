#include "hiertriple/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "hiertriple/rng.hpp"

namespace hiertriple {

Layout perturb(const Layout& layout, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("perturb: sigma must be >= 0");
  Layout out = layout;
  std::vector<SceneObject*> ordered;
  for (auto& o : out.objects) ordered.push_back(&o);
  std::sort(ordered.begin(), ordered.end(),
            [](const SceneObject* a, const SceneObject* b) { return a->id < b->id; });
  Rng rng(seed);
  for (SceneObject* o : ordered) {
    const double dx = rng.normal() * sigma;
    const double dy = rng.normal() * sigma;
    const double dtheta = rng.normal() * sigma * std::numbers::pi;
    o->position.x += dx;
    o->position.y += dy;
    const double theta = o->angle() + dtheta;
    o->orientation = {std::cos(theta), std::sin(theta)};
  }
  return out;
}

RearrangeResult rearrange(const Layout& initial, const TripletSet& set,
                          const OptimizerConfig& opt, const RasterConfig& raster) {
  if (opt.steps < 1) throw std::invalid_argument("rearrange: steps must be >= 1");
  if (!(opt.step_size > 0.0))
    throw std::invalid_argument("rearrange: step_size must be positive");
  if (!(opt.momentum >= 0.0) || opt.momentum >= 1.0)
    throw std::invalid_argument("rearrange: momentum must be in [0, 1)");

  // Pose state per object in ascending-id order.
  Layout state = initial;
  std::vector<SceneObject*> objs;
  for (auto& o : state.objects) objs.push_back(&o);
  std::sort(objs.begin(), objs.end(),
            [](const SceneObject* a, const SceneObject* b) { return a->id < b->id; });
  std::vector<double> theta(objs.size());
  for (size_t i = 0; i < objs.size(); ++i) theta[i] = objs[i]->angle();
  std::vector<PoseGradient> velocity(objs.size());

  RearrangeResult result;
  result.layout = state;

  double best = 0.0;
  for (int step = 0; step <= opt.steps; ++step) {
    LossBreakdown loss;
    GradientResult grad;
    if (step < opt.steps) {
      grad = loss_gradient(state, set, opt.weights, raster, opt.align);
      loss = grad.loss;
    } else {
      loss = total_relational_loss(state, set, opt.weights, raster, opt.align);
    }
    result.trace.push_back({step, loss.total, loss.o2r, loss.o2o, loss.c2c});
    if (step == 0) {
      result.initial_loss = loss.total;
      best = loss.total;
      result.best_step = 0;
      result.layout = state;
    } else if (loss.total < best) {
      best = loss.total;
      result.best_step = step;
      result.layout = state;
    }
    if (step == opt.steps) break;

    for (size_t i = 0; i < objs.size(); ++i) {
      const PoseGradient g = grad.by_object.at(objs[i]->id);
      velocity[i].x = opt.momentum * velocity[i].x + g.x;
      velocity[i].y = opt.momentum * velocity[i].y + g.y;
      velocity[i].theta = opt.momentum * velocity[i].theta + g.theta;
      objs[i]->position.x -= opt.step_size * velocity[i].x;
      objs[i]->position.y -= opt.step_size * velocity[i].y;
      theta[i] -= opt.step_size * velocity[i].theta;
      objs[i]->orientation = {std::cos(theta[i]), std::sin(theta[i])};
    }
  }
  result.final_loss = best;
  return result;
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
  std::string out = "step,total,l_o2r,l_o2o,l_c2c\n";
  char buf[256];
  for (const auto& row : trace) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g\n", row.step, row.total,
                  row.o2r, row.o2o, row.c2c);
    out += buf;
  }
  return out;
}

}  // namespace hiertriple
