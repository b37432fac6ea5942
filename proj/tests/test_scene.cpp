#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hiertriple/scene.hpp"
#include "hiertriple/scene_json.hpp"
#include "support/scene_builders.hpp"

using namespace hiertriple;
using builders::obj;

TEST_CASE("footprint of an axis-aligned object") {
  const auto fp = footprint(obj(0, "box", 2.0, 1.0, 0.0, 0.0));
  const auto cs = fp.corners();
  CHECK(cs[0].x == doctest::Approx(1.0));
  CHECK(cs[0].y == doctest::Approx(0.5));
  CHECK(cs[1].x == doctest::Approx(-1.0));
  CHECK(cs[1].y == doctest::Approx(0.5));
  CHECK(cs[2].x == doctest::Approx(-1.0));
  CHECK(cs[2].y == doctest::Approx(-0.5));
  CHECK(cs[3].x == doctest::Approx(1.0));
  CHECK(cs[3].y == doctest::Approx(-0.5));
}

TEST_CASE("footprint after a quarter turn swaps extents") {
  const auto fp = footprint(obj(0, "box", 2.0, 1.0, 0.0, 0.0, std::numbers::pi / 2));
  const auto box = fp.aabb();
  CHECK(box.min.x == doctest::Approx(-0.5));
  CHECK(box.max.x == doctest::Approx(0.5));
  CHECK(box.min.y == doctest::Approx(-1.0));
  CHECK(box.max.y == doctest::Approx(1.0));
}

TEST_CASE("footprint at 45 degrees matches an explicit rotation matrix") {
  const double th = std::numbers::pi / 4;
  const auto cs = footprint(obj(0, "box", 2.0, 1.0, 0.0, 0.0, th)).corners();
  const double c = std::cos(th), s = std::sin(th);
  const Vec2 local[4] = {{1.0, 0.5}, {-1.0, 0.5}, {-1.0, -0.5}, {1.0, -0.5}};
  for (int i = 0; i < 4; ++i) {
    CHECK(cs[i].x == doctest::Approx(c * local[i].x - s * local[i].y).epsilon(1e-12));
    CHECK(cs[i].y == doctest::Approx(s * local[i].x + c * local[i].y).epsilon(1e-12));
  }
}

TEST_CASE("corners translate with the object and reflect under a half turn") {
  const auto base = footprint(obj(0, "box", 1.0, 1.0, 0.0, 0.0)).corners();
  const auto moved = footprint(obj(0, "box", 1.0, 1.0, 3.0, 4.0)).corners();
  for (int i = 0; i < 4; ++i) {
    CHECK(moved[i].x == doctest::Approx(base[i].x + 3.0));
    CHECK(moved[i].y == doctest::Approx(base[i].y + 4.0));
  }
  const auto flipped =
      footprint(obj(0, "box", 2.0, 1.0, 0.0, 0.0, std::numbers::pi)).corners();
  const auto orig = footprint(obj(0, "box", 2.0, 1.0, 0.0, 0.0)).corners();
  for (int i = 0; i < 4; ++i) {
    CHECK(flipped[i].x == doctest::Approx(-orig[i].x).epsilon(1e-12));
    CHECK(flipped[i].y == doctest::Approx(-orig[i].y).epsilon(1e-12));
  }
}

TEST_CASE("footprint fit from corners round-trips") {
  for (double th : {0.0, 0.3, 1.2, -2.1}) {
    Footprint fp{{1.5, -2.0}, {0.8, 0.35}, th};
    const Footprint back = footprint_from_corners(fp.corners());
    CHECK(norm(back.center - fp.center) < 1e-9);
    CHECK(std::abs(back.half_extents.x - fp.half_extents.x) < 1e-9);
    CHECK(std::abs(back.half_extents.y - fp.half_extents.y) < 1e-9);
    const auto c1 = fp.corners();
    const auto c2 = back.corners();
    for (int i = 0; i < 4; ++i) CHECK(norm(c1[i] - c2[i]) < 1e-9);
  }
}

TEST_CASE("footprint rejects non-unit orientations") {
  SceneObject bad = obj(0, "box", 1.0, 1.0, 0.0, 0.0);
  bad.orientation = {1.2, 0.0};
  CHECK_THROWS_AS(footprint(bad), std::invalid_argument);
}

TEST_CASE("normalize_layout maps bounds to the unit square") {
  Layout l;
  l.objects = {obj(0, "a", 1.0, 1.0, 5.0, 5.0)};
  l.bounds = {{0.0, 0.0}, {10.0, 10.0}};
  const auto [normalized, t] = normalize_layout(l);
  CHECK(normalized.objects[0].position.x == doctest::Approx(0.5));
  CHECK(normalized.objects[0].position.y == doctest::Approx(0.5));
  CHECK(t.scale == doctest::Approx(0.1));
}

TEST_CASE("normalize_layout keeps the scale uniform on non-square bounds") {
  Layout l;
  l.objects = {obj(0, "a", 1.0, 1.0, 5.0, 5.0), obj(1, "b", 1.0, 1.0, 2.0, 1.0)};
  l.bounds = {{0.0, 0.0}, {10.0, 5.0}};
  const auto [normalized, t] = normalize_layout(l);
  CHECK(t.scale == doctest::Approx(0.1));
  for (const auto& o : normalized.objects) {
    CHECK(o.position.y >= 0.0);
    CHECK(o.position.y <= 0.5 + 1e-12);
  }
  // Pairwise distance ratios are preserved by the uniform scale.
  const Vec2 d0 = l.objects[0].centroid_xy() - l.objects[1].centroid_xy();
  const Vec2 d1 =
      normalized.objects[0].centroid_xy() - normalized.objects[1].centroid_xy();
  CHECK(norm(d1) == doctest::Approx(norm(d0) * 0.1).epsilon(1e-12));
}

TEST_CASE("normalize_layout is idempotent on a normalized layout") {
  Layout l;
  l.objects = {obj(0, "a", 0.1, 0.1, 0.25, 0.5), obj(1, "b", 0.1, 0.1, 0.75, 0.5)};
  l.bounds = {{0.0, 0.0}, {1.0, 1.0}};
  const auto [once, t1] = normalize_layout(l);
  const auto [twice, t2] = normalize_layout(once);
  for (size_t i = 0; i < l.objects.size(); ++i) {
    CHECK(std::abs(once.objects[i].position.x - twice.objects[i].position.x) < 1e-12);
    CHECK(std::abs(once.objects[i].position.y - twice.objects[i].position.y) < 1e-12);
  }
}

TEST_CASE("normalize then denormalize is the identity") {
  const Layout l = builders::three_region_scene();
  const auto [normalized, t] = normalize_layout(l);
  const Layout back = denormalize_layout(normalized, t);
  for (size_t i = 0; i < l.objects.size(); ++i) {
    CHECK(std::abs(back.objects[i].position.x - l.objects[i].position.x) < 1e-9);
    CHECK(std::abs(back.objects[i].position.y - l.objects[i].position.y) < 1e-9);
    CHECK(std::abs(back.objects[i].size.x - l.objects[i].size.x) < 1e-9);
  }
}

TEST_CASE("normalize_layout rejects degenerate bounds") {
  Layout l;
  l.objects = {obj(0, "a", 1.0, 1.0, 0.0, 0.0)};
  l.bounds = {{0.0, 0.0}, {0.0, 5.0}};
  CHECK_THROWS_AS(normalize_layout(l), std::invalid_argument);
}

TEST_CASE("validate_layout reports nothing on a well-formed scene") {
  CHECK(validate_layout(builders::two_object_scene()).empty());
}

TEST_CASE("validate_layout names both indices of a duplicate id") {
  Layout l;
  l.objects = {obj(7, "a", 1, 1, 0, 0), obj(3, "b", 1, 1, 2, 0), obj(7, "c", 1, 1, 4, 0)};
  l.bounds = {{0, 0}, {5, 1}};
  const auto v = validate_layout(l);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("duplicate object id 7") != std::string::npos);
  CHECK(v[0].find("0") != std::string::npos);
  CHECK(v[0].find("2") != std::string::npos);
}

TEST_CASE("validate_layout flags a stretched orientation with the object id") {
  Layout l;
  l.objects = {obj(42, "a", 1, 1, 0, 0)};
  l.objects[0].orientation = {1.2, 0.0};
  l.bounds = {{-1, -1}, {1, 1}};
  const auto v = validate_layout(l);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("42") != std::string::npos);
  CHECK(v[0].find("orientation") != std::string::npos);
}

TEST_CASE("validate_layout is pure") {
  Layout l = builders::three_region_scene();
  l.objects[0].orientation = {0.9, 0.0};
  CHECK(validate_layout(l) == validate_layout(l));
}

TEST_CASE("scene JSON round-trips and rejects unknown top-level keys") {
  const Layout l = builders::three_region_scene();
  const std::string text = scene_to_json(l);
  const Layout back = parse_scene_json(text);
  CHECK(scene_to_json(back) == text);
  CHECK(back.objects.size() == l.objects.size());

  CHECK_THROWS_AS(parse_scene_json(R"({"objects":[],"extra":1})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scene_json("{not json"), std::runtime_error);
}

TEST_CASE("default bounds prefer the floorplan and inflate footprints by 5%") {
  Layout with_plan = builders::two_object_scene();
  CHECK(with_plan.bounds.min.x == doctest::Approx(0.0));
  CHECK(with_plan.bounds.max.x == doctest::Approx(4.0));

  Layout bare;
  bare.objects = {obj(0, "a", 2.0, 2.0, 0.0, 0.0)};
  const Aabb b = default_bounds(bare.objects, std::nullopt);
  CHECK(b.min.x == doctest::Approx(-1.05));
  CHECK(b.max.x == doctest::Approx(1.05));
}

TEST_CASE("footprints_overlap is a positive-area test") {
  const auto a = footprint(obj(0, "a", 1.0, 1.0, 0.0, 0.0));
  const auto touching = footprint(obj(1, "b", 1.0, 1.0, 1.0, 0.0));
  const auto overlapping = footprint(obj(2, "c", 1.0, 1.0, 0.9, 0.0));
  const auto far = footprint(obj(3, "d", 1.0, 1.0, 3.0, 0.0));
  CHECK_FALSE(footprints_overlap(a, touching));
  CHECK(footprints_overlap(a, overlapping));
  CHECK_FALSE(footprints_overlap(a, far));
}
