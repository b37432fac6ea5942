#include "hiertriple/scene.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace hiertriple {

namespace {
constexpr double kOrientationTol = 1e-6;
}

const SceneObject* Layout::find(int id) const {
  for (const auto& o : objects)
    if (o.id == id) return &o;
  return nullptr;
}

std::array<Vec2, 4> Footprint::corners() const {
  const Vec2 hx = rotate({half_extents.x, 0.0}, angle);
  const Vec2 hy = rotate({0.0, half_extents.y}, angle);
  return {center + hx + hy, center - hx + hy, center - hx - hy, center + hx - hy};
}

Aabb Footprint::aabb() const {
  const auto cs = corners();
  Aabb box{cs[0], cs[0]};
  for (int i = 1; i < 4; ++i) box.expand(cs[i]);
  return box;
}

Footprint footprint(const SceneObject& obj) {
  const double n = norm(obj.orientation);
  if (std::abs(n - 1.0) > kOrientationTol)
    throw std::invalid_argument("object " + std::to_string(obj.id) +
                                ": orientation is not unit-norm");
  Footprint fp;
  fp.center = obj.centroid_xy();
  fp.half_extents = {obj.size.x / 2.0, obj.size.y / 2.0};
  fp.angle = obj.angle();
  return fp;
}

Footprint footprint_from_corners(const std::array<Vec2, 4>& cs) {
  Footprint fp;
  fp.center = (cs[0] + cs[1] + cs[2] + cs[3]) / 4.0;
  const Vec2 ex = (cs[0] - cs[1]) / 2.0;  // rotated +x axis, length = hx
  const Vec2 ey = (cs[1] - cs[2]) / 2.0;  // rotated +y axis, length = hy
  fp.half_extents = {norm(ex), norm(ey)};
  fp.angle = std::atan2(ex.y, ex.x);
  return fp;
}

Aabb default_bounds(const std::vector<SceneObject>& objects,
                    const std::optional<std::vector<Vec2>>& floorplan) {
  if (floorplan && floorplan->size() >= 3) {
    Aabb box{(*floorplan)[0], (*floorplan)[0]};
    for (const auto& p : *floorplan) box.expand(p);
    return box;
  }
  if (objects.empty()) return {{0.0, 0.0}, {1.0, 1.0}};
  Aabb box = footprint(objects.front()).aabb();
  for (size_t i = 1; i < objects.size(); ++i) {
    const Aabb b = footprint(objects[i]).aabb();
    box.expand(b.min);
    box.expand(b.max);
  }
  const Vec2 c = (box.min + box.max) / 2.0;
  const Vec2 h = (box.max - box.min) * (0.5 * 1.05);
  return {c - h, c + h};
}

std::pair<Layout, NormalizationTransform> normalize_layout(const Layout& layout) {
  const double longest = std::max(layout.bounds.width(), layout.bounds.height());
  if (!(longest > 0.0) || !(layout.bounds.width() > 0.0) ||
      !(layout.bounds.height() > 0.0))
    throw std::invalid_argument("normalize_layout: zero-area bounds");

  NormalizationTransform t;
  t.scale = 1.0 / longest;
  t.offset = layout.bounds.min;

  Layout out = layout;
  for (auto& o : out.objects) {
    const Vec2 q = t.apply({o.position.x, o.position.y});
    o.position = {q.x, q.y, o.position.z * t.scale};
    o.size = {o.size.x * t.scale, o.size.y * t.scale, o.size.z * t.scale};
  }
  if (out.floorplan)
    for (auto& p : *out.floorplan) p = t.apply(p);
  out.bounds = {t.apply(layout.bounds.min), t.apply(layout.bounds.max)};
  return {out, t};
}

Layout denormalize_layout(const Layout& layout, const NormalizationTransform& t) {
  Layout out = layout;
  for (auto& o : out.objects) {
    const Vec2 p = t.invert({o.position.x, o.position.y});
    o.position = {p.x, p.y, o.position.z / t.scale};
    o.size = {o.size.x / t.scale, o.size.y / t.scale, o.size.z / t.scale};
  }
  if (out.floorplan)
    for (auto& p : *out.floorplan) p = t.invert(p);
  out.bounds = {t.invert(layout.bounds.min), t.invert(layout.bounds.max)};
  return out;
}

bool footprints_overlap(const Footprint& a, const Footprint& b) {
  const auto ca = a.corners();
  const auto cb = b.corners();
  const std::array<Vec2, 4> axes{rotate({1.0, 0.0}, a.angle), rotate({0.0, 1.0}, a.angle),
                                 rotate({1.0, 0.0}, b.angle), rotate({0.0, 1.0}, b.angle)};
  constexpr double kTouchTol = 1e-12;
  for (const Vec2& axis : axes) {
    double amin = dot(ca[0], axis), amax = amin;
    double bmin = dot(cb[0], axis), bmax = bmin;
    for (int i = 1; i < 4; ++i) {
      const double pa = dot(ca[i], axis);
      const double pb = dot(cb[i], axis);
      amin = std::min(amin, pa);
      amax = std::max(amax, pa);
      bmin = std::min(bmin, pb);
      bmax = std::max(bmax, pb);
    }
    if (std::min(amax, bmax) - std::max(amin, bmin) <= kTouchTol) return false;
  }
  return true;
}

std::vector<std::string> validate_layout(const Layout& layout) {
  std::vector<std::string> violations;
  std::set<int> seen;
  for (size_t i = 0; i < layout.objects.size(); ++i) {
    const auto& o = layout.objects[i];
    if (!seen.insert(o.id).second) {
      size_t first = 0;
      while (layout.objects[first].id != o.id) ++first;
      violations.push_back("duplicate object id " + std::to_string(o.id) +
                           " at indices " + std::to_string(first) + " and " +
                           std::to_string(i));
    }
    const double n = norm(o.orientation);
    if (std::abs(n - 1.0) > kOrientationTol)
      violations.push_back("object " + std::to_string(o.id) +
                           ": orientation norm " + std::to_string(n) +
                           " is not 1");
    if (!(o.size.x > 0.0) || !(o.size.y > 0.0) || !(o.size.z > 0.0))
      violations.push_back("object " + std::to_string(o.id) +
                           ": non-positive size component");
  }
  if (layout.floorplan) {
    const auto& fp = *layout.floorplan;
    if (fp.size() < 3) {
      violations.push_back("floorplan has fewer than 3 vertices");
    } else {
      if (!polygon_is_simple(fp))
        violations.push_back("floorplan polygon is self-intersecting");
      else if (polygon_signed_area2(fp) <= 0.0)
        violations.push_back("floorplan polygon is not counterclockwise");
    }
  }
  return violations;
}

}  // namespace hiertriple
