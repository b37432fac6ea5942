#pragma once

#include <array>
#include <vector>

#include "hiertriple/scene.hpp"

namespace hiertriple {

struct ClusterConfig {
  double eps = 1.8;          // DBSCAN reachability threshold on the pair metric
  int min_samples = 2;       // neighborhood size (self included) to be a core point
  double lambda_giou = 0.02; // weight of the GIoU penalty term
};

/// A DBSCAN cluster of objects with the axis-aligned rectangle spanning the
/// member centroids. Singleton rectangles are inflated to the member's
/// footprint AABB.
struct FunctionalRegion {
  int id = 0;
  std::vector<int> member_ids;       // ascending object ids
  Aabb rect;
  std::array<Vec2, 4> virtual_corners() const {
    return {Vec2{rect.max.x, rect.max.y}, Vec2{rect.min.x, rect.max.y},
            Vec2{rect.min.x, rect.min.y}, Vec2{rect.max.x, rect.min.y}};
  }
};

/// Generalized IoU of two axis-aligned boxes, in [-1, 1].
/// Throws std::invalid_argument on zero-area boxes.
double giou(const Aabb& a, const Aabb& b);

/// m_ij = ||p_i - p_j||^2_xy + lambda_giou * (1 - GIoU(aabb_i, aabb_j)).
/// Symmetric with m_ii = 0.
double pair_metric(const SceneObject& a, const SceneObject& b, const ClusterConfig& cfg);

/// DBSCAN over the pair-metric matrix. Every object lands in exactly one
/// region; noise points become singleton regions. Deterministic and invariant
/// to the input order of objects (expansion in ascending object-id order).
std::vector<FunctionalRegion> cluster(const Layout& layout, const ClusterConfig& cfg);

}  // namespace hiertriple
