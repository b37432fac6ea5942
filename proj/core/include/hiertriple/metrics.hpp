#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hiertriple/scene.hpp"

namespace hiertriple {

using CategoryPair = std::pair<std::string, std::string>;  // sorted

/// Distance statistics of one frequent furniture pair: Gaussian KDE over the
/// normalized centroid distances with Scott's-rule bandwidth. The expectation
/// of that KDE is exactly the sample mean.
struct PairStat {
  CategoryPair pair;
  double frequency = 0.0;    // fraction of layouts containing the pair
  double expectation = 0.0;  // mean normalized centroid distance
  double bandwidth = 0.0;    // Scott: sigma * n^(-1/5)
  std::vector<double> samples;
};

struct ReferenceStats {
  double threshold = 0.5;
  std::vector<PairStat> pairs;
};

/// Ground-plane oriented-footprint overlap with positive area.
bool collides(const SceneObject& a, const SceneObject& b);

/// Fraction of objects colliding with at least one other object.
double col_obj(std::span<const Layout> layouts);

/// Fraction of layouts containing at least one colliding pair.
double col_scene(std::span<const Layout> layouts);

enum class OutRule {
  AnyCorner,     // out as soon as one footprint corner leaves the floorplan
  AreaFraction,  // out when the sampled outside-area fraction exceeds the
                 // threshold (deterministic grid sampling, approximate)
};

/// Fraction of objects extending beyond their layout's floorplan. Every
/// layout must carry a floorplan; throws std::invalid_argument otherwise.
double r_out(std::span<const Layout> layouts, OutRule rule = OutRule::AnyCorner,
             double area_threshold = 0.0);

/// Unordered category pairs co-occurring in more than `threshold` of layouts.
/// Same-category pairs need two instances in a layout to count.
std::vector<CategoryPair> frequent_pairs(std::span<const Layout> layouts,
                                         double threshold = 0.5);

/// KDE statistics for one pair; requires at least 2 distance samples.
PairStat pair_expectation(std::span<const Layout> layouts, const CategoryPair& pair);

/// Gaussian KDE density at x.
double kde_density(const PairStat& stat, double x);

ReferenceStats build_reference_stats(std::span<const Layout> layouts,
                                     double threshold = 0.5);

struct DObjResult {
  double value = 0.0;
  int evaluated_pairs = 0;
  std::vector<std::string> skipped;  // reference pairs absent from the corpus
};

/// Mean absolute gap of distance expectations over the reference's frequent
/// pairs; pairs without >= 2 generated samples are skipped with a diagnostic.
/// Throws std::invalid_argument when nothing is evaluable.
DObjResult d_obj(std::span<const Layout> generated, const ReferenceStats& reference);

std::string reference_stats_to_json(const ReferenceStats& stats);
ReferenceStats reference_stats_from_json(const std::string& text);

}  // namespace hiertriple
