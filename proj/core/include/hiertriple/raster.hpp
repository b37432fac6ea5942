#pragma once

#include <array>
#include <map>
#include <vector>

#include "hiertriple/scene.hpp"
#include "hiertriple/triplets.hpp"

namespace hiertriple {

/// Canvas mapping normalized [0,1]^2 scene coordinates onto a square pixel
/// grid with a margin, plus the logistic temperature (in pixels) of the soft
/// edge.
struct RasterConfig {
  int resolution = 128;
  double tau = 0.25;    // pixels
  double margin = 4.0;  // pixels kept free around the unit square

  double pixel_scale() const { return resolution - 2.0 * margin; }
  Vec2 to_pixels(const Vec2& q) const {
    return {margin + q.x * pixel_scale(), margin + q.y * pixel_scale()};
  }
};

struct OccupancyImage {
  int resolution = 0;
  std::vector<double> values;  // row-major, values[y * resolution + x]

  double at(int x, int y) const { return values[static_cast<size_t>(y) * resolution + x]; }
  double sum() const;
};

struct LossWeights {
  double lambda_o2r = 0.025;
  double lambda_o2o = 0.05;
  double lambda_c2c = 0.04;
};

enum class AlignMode { None, Translation, Rotation };

AlignMode align_mode_from_string(const std::string& s);
std::string to_string(AlignMode m);

/// Soft coverage: pixel value = logistic(-d/tau) with d the signed distance
/// (pixels, negative inside) to the triangle boundary. Vertices are in
/// normalized scene coordinates. Throws std::invalid_argument on degenerate
/// triangles (area < 1e-12) or bad config.
OccupancyImage rasterize_soft(const std::array<Vec2, 3>& tri, const RasterConfig& cfg);

/// Binary pixel-center-inside indicator on the same canvas.
OccupancyImage rasterize_hard(const std::array<Vec2, 3>& tri, const RasterConfig& cfg);

/// IoU of two coverage images: sum(min) / sum(max); 0 when both are empty.
/// Exactly 1 on identical images, which keeps the relationship losses zero at
/// the ground truth. Throws std::invalid_argument on resolution mismatch.
double soft_iou(const OccupancyImage& a, const OccupancyImage& b);

/// Per-term relationship losses: mean over triplets of 1 - IoU between the
/// denoised-resolved triangle and the stored ground-truth triangle. The
/// layout must be in the extraction's normalized frame. Empty triplet lists
/// contribute 0. Degenerate denoised triangles count as loss 1.
double loss_o2r(const Layout& denoised, const TripletSet& set, const RasterConfig& cfg);
double loss_o2o(const Layout& denoised, const TripletSet& set, const RasterConfig& cfg,
                AlignMode align = AlignMode::Translation);
double loss_c2c(const Layout& denoised, const TripletSet& set, const RasterConfig& cfg,
                AlignMode align = AlignMode::Translation);

struct LossBreakdown {
  double total = 0.0;
  double o2r = 0.0;
  double o2o = 0.0;
  double c2c = 0.0;
  int degenerate_skips = 0;
};

LossBreakdown total_relational_loss(const Layout& denoised, const TripletSet& set,
                                    const LossWeights& weights, const RasterConfig& cfg,
                                    AlignMode align = AlignMode::Translation);

struct PoseGradient {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

struct GradientResult {
  std::map<int, PoseGradient> by_object;  // keyed by object id
  LossBreakdown loss;
};

/// Analytic d(total loss)/d(object x, y, theta), chained through the soft
/// rasterization, the IoU, the alignment transform and the anchor resolution.
/// Matches central finite differences to relative error <= 1e-3.
GradientResult loss_gradient(const Layout& denoised, const TripletSet& set,
                             const LossWeights& weights, const RasterConfig& cfg,
                             AlignMode align = AlignMode::Translation);

}  // namespace hiertriple
