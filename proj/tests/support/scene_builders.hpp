#pragma once

// Hand-built layouts shared across test suites.

#include <cmath>
#include <string>

#include "hiertriple/scene.hpp"

namespace builders {

using hiertriple::Layout;
using hiertriple::SceneObject;
using hiertriple::Vec2;

inline SceneObject obj(int id, const std::string& category, double sx, double sy,
                       double x, double y, double theta = 0.0, double sz = 1.0) {
  SceneObject o;
  o.id = id;
  o.category = category;
  o.size = {sx, sy, sz};
  o.position = {x, y, sz / 2.0};
  o.orientation = {std::cos(theta), std::sin(theta)};
  return o;
}

inline Layout finalize(Layout layout) {
  layout.bounds = hiertriple::default_bounds(layout.objects, layout.floorplan);
  return layout;
}

/// Two nearby unit-ish boxes, one functional region.
inline Layout two_object_scene() {
  Layout l;
  l.objects = {obj(0, "sofa", 1.0, 1.0, 1.0, 1.0), obj(1, "table", 1.0, 1.0, 2.2, 1.0)};
  l.floorplan = std::vector<Vec2>{{0, 0}, {4, 0}, {4, 3}, {0, 3}};
  return finalize(l);
}

/// Three well-separated groups, mirroring a living/dining/cabinet split.
inline Layout three_region_scene() {
  Layout l;
  // Living cluster (ids 0-3).
  l.objects.push_back(obj(0, "multi_seat_sofa", 2.2, 0.95, 2.0, 1.0));
  l.objects.push_back(obj(1, "coffee_table", 0.6, 0.5, 2.0, 2.0));
  l.objects.push_back(obj(2, "armchair", 0.8, 0.85, 0.9, 1.9));
  l.objects.push_back(obj(3, "tv_stand", 1.6, 0.45, 2.0, 3.1));
  // Dining cluster (ids 4-6).
  l.objects.push_back(obj(4, "dining_table", 1.3, 0.8, 7.0, 1.2));
  l.objects.push_back(obj(5, "dining_chair", 0.45, 0.45, 7.0, 2.0));
  l.objects.push_back(obj(6, "dining_chair", 0.45, 0.45, 6.2, 1.2));
  // Lone cabinet far away (id 7).
  l.objects.push_back(obj(7, "cabinet", 0.9, 0.4, 7.5, 5.5));
  l.floorplan = std::vector<Vec2>{{0, 0}, {8.5, 0}, {8.5, 6.5}, {0, 6.5}};
  return finalize(l);
}

}  // namespace builders
