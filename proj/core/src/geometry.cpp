#include "hiertriple/geometry.hpp"

#include <algorithm>

namespace hiertriple {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = norm2(ab);
  if (len2 == 0.0) return norm(p - a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return norm(p - (a + ab * t));
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d,
                        bool proper_only) {
  const double d1 = orient2d(c, d, a);
  const double d2 = orient2d(c, d, b);
  const double d3 = orient2d(a, b, c);
  const double d4 = orient2d(a, b, d);

  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (proper_only) return false;

  auto on_segment = [](const Vec2& s, const Vec2& e, const Vec2& q) {
    return std::min(s.x, e.x) <= q.x && q.x <= std::max(s.x, e.x) &&
           std::min(s.y, e.y) <= q.y && q.y <= std::max(s.y, e.y);
  };
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

bool point_in_polygon(const Vec2& p, std::span<const Vec2> poly, double tol) {
  const size_t n = poly.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, poly[i], poly[(i + 1) % n]) <= tol) return true;
  }
  bool inside = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

double polygon_signed_area2(std::span<const Vec2> poly) {
  double s = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) s += cross(poly[i], poly[(i + 1) % n]);
  return s;
}

bool polygon_is_simple(std::span<const Vec2> poly) {
  const size_t n = poly.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    for (size_t j = i + 1; j < n; ++j) {
      // Skip adjacent edges (they share an endpoint by construction).
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(a, b, poly[j], poly[(j + 1) % n], /*proper_only=*/false))
        return false;
    }
  }
  return true;
}

std::vector<int> convex_hull(std::span<const Vec2> pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
    if (pts[a].y != pts[b].y) return pts[a].y < pts[b].y;
    return a < b;
  });
  // Drop exact duplicates so the Andrew monotone chain stays well-formed.
  std::vector<int> uniq;
  for (int i : idx) {
    if (!uniq.empty() && pts[uniq.back()] == pts[i]) continue;
    uniq.push_back(i);
  }
  const int m = static_cast<int>(uniq.size());
  if (m < 3) return uniq;

  std::vector<int> hull(2 * m);
  int k = 0;
  for (int i = 0; i < m; ++i) {
    while (k >= 2 && orient2d(pts[hull[k - 2]], pts[hull[k - 1]], pts[uniq[i]]) <= 0) --k;
    hull[k++] = uniq[i];
  }
  for (int i = m - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && orient2d(pts[hull[k - 2]], pts[hull[k - 1]], pts[uniq[i]]) <= 0) --k;
    hull[k++] = uniq[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace hiertriple
