#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hiertriple/geometry.hpp"

namespace hiertriple {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

/// One furniture item: category label, full box extents, centroid and a
/// unit ground-plane orientation (cos, sin). `shape_feature` is an opaque
/// retrieval embedding carried through I/O untouched.
struct SceneObject {
  int id = 0;
  std::string category;
  Vec3 size;        // full extents, meters
  Vec3 position;    // centroid, meters
  Vec2 orientation{1.0, 0.0};  // (cos θ, sin θ)
  std::optional<std::array<double, 32>> shape_feature;

  double angle() const { return std::atan2(orientation.y, orientation.x); }
  Vec2 centroid_xy() const { return {position.x, position.y}; }
  /// Ground-plane footprint area s_x * s_y.
  double footprint_area() const { return size.x * size.y; }
};

struct Layout {
  std::vector<SceneObject> objects;
  std::optional<std::vector<Vec2>> floorplan;  // simple CCW polygon
  Aabb bounds;

  const SceneObject* find(int id) const;
};

/// Oriented ground-plane rectangle.
struct Footprint {
  Vec2 center;
  Vec2 half_extents;
  double angle = 0.0;  // radians

  /// Corners in CCW order; corner 0 is the rotated (+x, +y) corner.
  std::array<Vec2, 4> corners() const;
  Aabb aabb() const;
};

/// Uniform scale + translation: q = (p - offset) * scale.
struct NormalizationTransform {
  double scale = 1.0;
  Vec2 offset;

  Vec2 apply(const Vec2& p) const { return (p - offset) * scale; }
  Vec2 invert(const Vec2& q) const { return q / scale + offset; }
};

/// Ground-plane footprint of an object. Throws std::invalid_argument when the
/// orientation is not unit-norm within 1e-6.
Footprint footprint(const SceneObject& obj);

/// Least-surprise inverse of Footprint::corners(): rebuilds the rectangle
/// from 4 CCW corners (corner 0 = rotated (+x,+y) corner).
Footprint footprint_from_corners(const std::array<Vec2, 4>& corners);

/// Default scene bounds: the floorplan's AABB when present, otherwise the
/// union of footprint AABBs inflated by 5% about its center.
Aabb default_bounds(const std::vector<SceneObject>& objects,
                    const std::optional<std::vector<Vec2>>& floorplan);

/// Maps layout.bounds onto [0,1]^2 with a single uniform scale (longest side
/// -> 1). Positions, sizes and the floorplan are transformed; orientations are
/// unchanged. Throws std::invalid_argument on zero-area bounds.
std::pair<Layout, NormalizationTransform> normalize_layout(const Layout& layout);

/// Applies the inverse transform, undoing normalize_layout.
Layout denormalize_layout(const Layout& layout, const NormalizationTransform& t);

/// Invariant violations as human-readable reports; empty means valid.
/// Never throws.
std::vector<std::string> validate_layout(const Layout& layout);

/// Separating-axis test over the 4 box axes; true only for positive-area
/// intersection (edge touching does not count).
bool footprints_overlap(const Footprint& a, const Footprint& b);

}  // namespace hiertriple
