#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "hiertriple/rng.hpp"
#include "hiertriple/triangulation.hpp"
#include "support/oracles.hpp"

using namespace hiertriple;

namespace {

std::vector<std::array<int, 3>> as_sorted_triples(const TriangulationResult& r) {
  std::vector<std::array<int, 3>> out;
  for (auto t : r.triangles) {
    std::sort(t.begin(), t.end());
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vec2> random_points(Rng& rng, int n) {
  std::vector<Vec2> pts;
  for (int i = 0; i < n; ++i) pts.push_back({rng.uniform(), rng.uniform()});
  return pts;
}

}  // namespace

TEST_CASE("three points give one triangle") {
  const auto r = delaunay({{0, 0}, {1, 0}, {0.3, 0.8}});
  REQUIRE(r.triangles.size() == 1);
  CHECK(r.hidden.empty());
  // CCW orientation.
  const auto& t = r.triangles[0];
  CHECK(orient2d(r.points[t[0]], r.points[t[1]], r.points[t[2]]) > 0);
}

TEST_CASE("cocircular square resolves to the lexicographically smallest diagonal") {
  // Corners of the unit square are cocircular; the tie must break toward the
  // diagonal with the lexicographically smallest endpoints, (0,0)-(1,1).
  const std::vector<Vec2> pts{{1, 1}, {0, 1}, {0, 0}, {1, 0}};
  const auto r = delaunay(pts);
  REQUIRE(r.triangles.size() == 2);
  std::set<std::pair<int, int>> edges;
  for (const auto& t : r.triangles)
    for (int e = 0; e < 3; ++e)
      edges.insert({std::min(t[e], t[(e + 1) % 3]), std::max(t[e], t[(e + 1) % 3])});
  CHECK(edges.count({0, 2}) == 1);  // (1,1)-(0,0)
  CHECK(edges.count({1, 3}) == 0);  // (0,1)-(1,0)
}

TEST_CASE("collinear input is rejected") {
  CHECK_THROWS_AS(delaunay({{0, 0}, {1, 0}, {2, 0}, {3, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(delaunay({{0, 0}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("delaunay handles collinear subsets and points on hull edges") {
  // Three collinear points along the bottom plus off-line points.
  const std::vector<Vec2> pts{{0, 0}, {1, 0}, {2, 0}, {0.7, 1.1}, {1.6, 0.9}};
  const auto r = delaunay(pts);
  CHECK(r.hidden.empty());
  const auto brute = oracles::brute_delaunay(pts);
  REQUIRE_FALSE(brute.degenerate);
  CHECK(as_sorted_triples(r) == brute.triangles);
}

TEST_CASE("delaunay equals the brute-force circumcircle enumeration") {
  Rng rng(424242);
  int done = 0;
  while (done < 40) {
    const int n = 4 + rng.uniform_int(0, 8);
    const auto pts = random_points(rng, n);
    const auto brute = oracles::brute_delaunay(pts);
    if (brute.degenerate) continue;
    const auto r = delaunay(pts);
    CHECK(as_sorted_triples(r) == brute.triangles);
    CHECK(r.hidden.empty());
    ++done;
  }
}

TEST_CASE("weighted delaunay with equal weights reduces to delaunay") {
  Rng rng(7);
  for (int trial = 0; trial < 15; ++trial) {
    const auto pts = random_points(rng, 4 + rng.uniform_int(0, 6));
    const auto dt = delaunay(pts);
    const auto wdt0 = weighted_delaunay(pts, std::vector<double>(pts.size(), 0.0));
    CHECK(as_sorted_triples(dt) == as_sorted_triples(wdt0));
    const auto wdtc = weighted_delaunay(pts, std::vector<double>(pts.size(), 0.25));
    CHECK(as_sorted_triples(dt) == as_sorted_triples(wdtc));
  }
}

TEST_CASE("a dominated point is hidden") {
  // A light point close to a heavy one, surrounded so its power cell dies.
  const std::vector<Vec2> pts{{0, 0}, {0.3, 0.05}, {2, 0}, {1, 1.6}, {1, -1.6}};
  const std::vector<double> w{1.0, 0.001, 0.2, 0.2, 0.2};
  const auto r = weighted_delaunay(pts, w);
  const auto brute = oracles::brute_regular(pts, w);
  REQUIRE_FALSE(brute.degenerate);
  CHECK(as_sorted_triples(r) == brute.triangles);
  CHECK(r.hidden == brute.hidden);
  CHECK(std::find(r.hidden.begin(), r.hidden.end(), 1) != r.hidden.end());
}

TEST_CASE("weighted delaunay equals the brute-force power enumeration") {
  Rng rng(31337);
  int done = 0;
  while (done < 40) {
    const int n = 4 + rng.uniform_int(0, 4);
    const auto pts = random_points(rng, n);
    std::vector<double> w;
    for (int i = 0; i < n; ++i) w.push_back(rng.uniform() * 0.15);
    const auto brute = oracles::brute_regular(pts, w);
    if (brute.degenerate) continue;
    const auto r = weighted_delaunay(pts, w);
    CHECK(as_sorted_triples(r) == brute.triangles);
    CHECK(r.hidden == brute.hidden);
    ++done;
  }
}

TEST_CASE("weighted delaunay validates input") {
  CHECK_THROWS_AS(weighted_delaunay({{0, 0}, {1, 0}, {0, 1}}, {0.1, 0.1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(weighted_delaunay({{0, 0}, {1, 0}, {0, 1}}, {0.1, 0.1, -0.2}),
                  std::invalid_argument);
}

TEST_CASE("point_link_repair is the identity without hidden points") {
  const auto r = delaunay({{0, 0}, {1, 0}, {0.4, 0.9}, {1.3, 1.1}});
  const auto repaired = point_link_repair(r);
  CHECK(repaired.triangles == r.triangles);
  CHECK(repaired.hidden.empty());
}

TEST_CASE("one interior hidden point becomes a 3-triangle fan") {
  const std::vector<Vec2> pts{{0, 0}, {2, 0}, {1, 1.8}, {1.0, 0.55}};
  const std::vector<double> w{2.5, 2.5, 2.5, 0.0001};
  const auto r = weighted_delaunay(pts, w);
  REQUIRE(r.hidden == std::vector<int>{3});
  REQUIRE(r.triangles.size() == 1);
  const auto repaired = point_link_repair(r);
  CHECK(repaired.hidden.empty());
  CHECK(repaired.triangles.size() == 3);
  int touching = 0;
  for (const auto& t : repaired.triangles)
    touching += std::count(t.begin(), t.end(), 3) > 0 ? 1 : 0;
  CHECK(touching == 3);
}

TEST_CASE("repair covers every point on random weighted instances") {
  Rng rng(555);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + rng.uniform_int(0, 8);
    const auto pts = random_points(rng, n);
    std::vector<double> w;
    // Heavy-tailed weights to provoke hidden points.
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform();
      w.push_back(u < 0.3 ? rng.uniform(0.2, 0.9) : rng.uniform(0.0, 0.02));
    }
    const auto repaired = point_link_repair(weighted_delaunay(pts, w));
    CHECK(repaired.hidden.empty());
    for (int i = 0; i < n; ++i) CHECK(repaired.uses(i));
  }
}

TEST_CASE("constrained delaunay keeps a forced square diagonal") {
  const std::vector<Vec2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto r = constrained_delaunay(pts, {{1, 3}});
  REQUIRE(r.triangles.size() == 2);
  std::set<std::pair<int, int>> edges;
  for (const auto& t : r.triangles)
    for (int e = 0; e < 3; ++e)
      edges.insert({std::min(t[e], t[(e + 1) % 3]), std::max(t[e], t[(e + 1) % 3])});
  CHECK(edges.count({1, 3}) == 1);
}

TEST_CASE("square ring with an interior point fans into 4 triangles") {
  const std::vector<Vec2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.45}};
  const std::vector<std::array<int, 2>> ring{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  const auto r = constrained_delaunay(pts, ring);
  CHECK(r.triangles.size() == 4);
  int touching = 0;
  for (const auto& t : r.triangles)
    touching += std::count(t.begin(), t.end(), 4) > 0 ? 1 : 0;
  CHECK(touching == 4);
}

TEST_CASE("nested squares: no triangle edge crosses either ring") {
  std::vector<Vec2> pts;
  std::vector<std::array<int, 2>> segs;
  const auto add_square = [&](double lo, double hi) {
    const int base = static_cast<int>(pts.size());
    pts.push_back({lo, lo});
    pts.push_back({hi, lo});
    pts.push_back({hi, hi});
    pts.push_back({lo, hi});
    for (int k = 0; k < 4; ++k) segs.push_back({base + k, base + (k + 1) % 4});
  };
  add_square(0.0, 3.0);
  add_square(1.0, 2.0);
  const auto r = constrained_delaunay(pts, segs);

  // Every constraint segment must appear as a triangle edge...
  std::set<std::pair<int, int>> edges;
  for (const auto& t : r.triangles)
    for (int e = 0; e < 3; ++e)
      edges.insert({std::min(t[e], t[(e + 1) % 3]), std::max(t[e], t[(e + 1) % 3])});
  for (const auto& s : segs)
    CHECK(edges.count({std::min(s[0], s[1]), std::max(s[0], s[1])}) == 1);
  // ...and no triangle edge may properly cross a ring segment.
  for (const auto& [u, v] : edges)
    for (const auto& s : segs)
      CHECK_FALSE(oracles::segments_cross(pts[u], pts[v], pts[s[0]], pts[s[1]]));
}

TEST_CASE("crossing constraint segments are rejected") {
  const std::vector<Vec2> pts{{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  CHECK_THROWS_AS(constrained_delaunay(pts, {{0, 1}, {2, 3}}), std::invalid_argument);
}

TEST_CASE("constraints survive on random instances") {
  Rng rng(808);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pts = random_points(rng, 8);
    // One random non-degenerate constraint between distinct points.
    const int a = rng.uniform_int(0, 7);
    int b = rng.uniform_int(0, 7);
    if (a == b) b = (b + 1) % 8;
    TriangulationResult r;
    try {
      r = constrained_delaunay(pts, {{a, b}});
    } catch (const std::invalid_argument&) {
      continue;  // degenerate draw (collinear etc.)
    }
    bool found = false;
    for (const auto& t : r.triangles)
      for (int e = 0; e < 3; ++e) {
        const int u = t[e], v = t[(e + 1) % 3];
        if ((u == a && v == b) || (u == b && v == a)) found = true;
      }
    // The constraint may have been subdivided by a vertex sitting on it;
    // accept either the full edge or a covering chain.
    if (!found) {
      const Vec2 d = pts[b] - pts[a];
      double covered = 0.0;
      for (const auto& t : r.triangles)
        for (int e = 0; e < 3; ++e) {
          const int u = t[e], v = t[(e + 1) % 3];
          if (point_segment_distance(pts[u], pts[a], pts[b]) < 1e-9 &&
              point_segment_distance(pts[v], pts[a], pts[b]) < 1e-9)
            covered += std::abs(dot(pts[v] - pts[u], d)) / norm2(d);
        }
      CHECK(covered >= 1.0 - 1e-9);
    }
  }
}
