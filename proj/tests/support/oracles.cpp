#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "hiertriple/rng.hpp"

namespace oracles {

namespace {

std::optional<Vec2> circle_center(const Vec2& a, const Vec2& b, const Vec2& c,
                                  double za, double zb, double zc) {
  // 2 (b - a) . x = zb - za ; 2 (c - a) . x = zc - za, where z = |p|^2 - w.
  const double a11 = 2.0 * (b.x - a.x), a12 = 2.0 * (b.y - a.y);
  const double a21 = 2.0 * (c.x - a.x), a22 = 2.0 * (c.y - a.y);
  const double r1 = zb - za, r2 = zc - za;
  const double det = a11 * a22 - a12 * a21;
  if (std::abs(det) < 1e-14) return std::nullopt;
  return Vec2{(r1 * a22 - r2 * a12) / det, (a11 * r2 - a21 * r1) / det};
}

BruteTriangulation brute_power(const std::vector<Vec2>& pts,
                               const std::vector<double>& w, double tol) {
  const int n = static_cast<int>(pts.size());
  BruteTriangulation out;
  auto z = [&](int i) { return hiertriple::norm2(pts[i]) - w[i]; };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const auto center = circle_center(pts[i], pts[j], pts[k], z(i), z(j), z(k));
        if (!center) continue;
        const double r2 = hiertriple::norm2(pts[i] - *center) - w[i];
        bool empty = true;
        for (int q = 0; q < n && empty; ++q) {
          if (q == i || q == j || q == k) continue;
          const double power = hiertriple::norm2(pts[q] - *center) - w[q] - r2;
          if (power < -tol) empty = false;
          if (std::abs(power) <= tol) out.degenerate = true;
        }
        if (empty) out.triangles.push_back({i, j, k});
      }
  std::sort(out.triangles.begin(), out.triangles.end());
  std::vector<bool> used(n, false);
  for (const auto& t : out.triangles)
    for (int v : t) used[v] = true;
  for (int i = 0; i < n; ++i)
    if (!used[i]) out.hidden.push_back(i);
  return out;
}

}  // namespace

BruteTriangulation brute_delaunay(const std::vector<Vec2>& pts, double tol) {
  return brute_power(pts, std::vector<double>(pts.size(), 0.0), tol);
}

BruteTriangulation brute_regular(const std::vector<Vec2>& pts,
                                 const std::vector<double>& weights, double tol) {
  return brute_power(pts, weights, tol);
}

std::vector<int> brute_dbscan(const std::vector<std::vector<double>>& metric,
                              double eps, int min_samples) {
  const int n = static_cast<int>(metric.size());
  auto neighborhood = [&](int i) {
    std::vector<int> out;
    for (int j = 0; j < n; ++j)
      if (metric[i][j] <= eps) out.push_back(j);
    return out;
  };
  std::vector<int> label(n, -2);
  int cluster = 0;
  for (int i = 0; i < n; ++i) {
    if (label[i] != -2) continue;
    auto nbrs = neighborhood(i);
    if (static_cast<int>(nbrs.size()) < min_samples) {
      label[i] = -1;
      continue;
    }
    label[i] = cluster;
    for (size_t idx = 0; idx < nbrs.size(); ++idx) {
      const int q = nbrs[idx];
      if (label[q] == -1) label[q] = cluster;
      if (label[q] != -2) continue;
      label[q] = cluster;
      auto qn = neighborhood(q);
      if (static_cast<int>(qn.size()) >= min_samples)
        nbrs.insert(nbrs.end(), qn.begin(), qn.end());
    }
    ++cluster;
  }
  return label;
}

double mc_overlap_fraction(const hiertriple::Footprint& a,
                           const hiertriple::Footprint& b, int samples,
                           std::uint64_t seed) {
  hiertriple::Rng rng(seed);
  int hits = 0;
  for (int s = 0; s < samples; ++s) {
    const Vec2 local{rng.uniform(-1.0, 1.0) * a.half_extents.x,
                     rng.uniform(-1.0, 1.0) * a.half_extents.y};
    const Vec2 p = a.center + hiertriple::rotate(local, a.angle);
    const Vec2 in_b = hiertriple::rotate(p - b.center, -b.angle);
    if (std::abs(in_b.x) <= b.half_extents.x && std::abs(in_b.y) <= b.half_extents.y)
      ++hits;
  }
  return static_cast<double>(hits) / samples;
}

bool raycast_inside(const Vec2& p, const std::vector<Vec2>& poly) {
  bool inside = false;
  const size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    if ((poly[i].y > p.y) != (poly[j].y > p.y)) {
      const double x = poly[i].x + (p.y - poly[i].y) / (poly[j].y - poly[i].y) *
                                       (poly[j].x - poly[i].x);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

double hard_pixel_iou(const std::array<Vec2, 3>& t1, const std::array<Vec2, 3>& t2,
                      int resolution, double margin) {
  const double scale = resolution - 2.0 * margin;
  auto inside = [&](std::array<Vec2, 3> t, const Vec2& p) {
    for (auto& v : t) v = Vec2{margin + v.x * scale, margin + v.y * scale};
    const double o = hiertriple::orient2d(t[0], t[1], t[2]);
    if (o < 0.0) std::swap(t[1], t[2]);
    return hiertriple::orient2d(t[0], t[1], p) >= 0.0 &&
           hiertriple::orient2d(t[1], t[2], p) >= 0.0 &&
           hiertriple::orient2d(t[2], t[0], p) >= 0.0;
  };
  long long inter = 0, uni = 0;
  for (int iy = 0; iy < resolution; ++iy)
    for (int ix = 0; ix < resolution; ++ix) {
      const Vec2 p{ix + 0.5, iy + 0.5};
      const bool a = inside(t1, p);
      const bool b = inside(t2, p);
      inter += (a && b) ? 1 : 0;
      uni += (a || b) ? 1 : 0;
    }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
}

bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double d1 = hiertriple::orient2d(c, d, a);
  const double d2 = hiertriple::orient2d(c, d, b);
  const double d3 = hiertriple::orient2d(a, b, c);
  const double d4 = hiertriple::orient2d(a, b, d);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
         ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace oracles
