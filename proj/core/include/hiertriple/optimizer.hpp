#pragma once

#include <cstdint>
#include <vector>

#include "hiertriple/raster.hpp"
#include "hiertriple/scene.hpp"
#include "hiertriple/triplets.hpp"

namespace hiertriple {

struct OptimizerConfig {
  int steps = 500;
  double step_size = 0.01;  // normalized units
  double momentum = 0.9;
  AlignMode align = AlignMode::Translation;
  LossWeights weights;
  std::uint64_t seed = 0;
};

/// Zero-mean Gaussian jitter: stdev sigma on each normalized (x, y), stdev
/// sigma*pi on theta. Deterministic per seed; objects processed in ascending
/// id order. The layout is expected in normalized coordinates.
Layout perturb(const Layout& layout, double sigma, std::uint64_t seed);

struct TraceRow {
  int step = 0;
  double total = 0.0;
  double o2r = 0.0;
  double o2o = 0.0;
  double c2c = 0.0;
};

struct RearrangeResult {
  Layout layout;  // lowest-loss iterate (the initial state counts)
  double initial_loss = 0.0;
  double final_loss = 0.0;
  int best_step = 0;
  std::vector<TraceRow> trace;  // iterates 0..steps inclusive
};

/// Momentum gradient descent on the total relational loss over per-object
/// (x, y, theta). Sizes and categories stay fixed; orientation is emitted as
/// a unit (cos, sin) each step. Returns the best iterate, so the final loss
/// never exceeds the initial one. The layout must be in the triplet set's
/// normalized frame.
RearrangeResult rearrange(const Layout& initial, const TripletSet& set,
                          const OptimizerConfig& opt, const RasterConfig& raster);

/// CSV with header step,total,l_o2r,l_o2o,l_c2c; deterministic bytes.
std::string trace_to_csv(const std::vector<TraceRow>& trace);

}  // namespace hiertriple
