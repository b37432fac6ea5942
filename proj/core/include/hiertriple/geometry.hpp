#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace hiertriple {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm2(const Vec2& a) { return dot(a, a); }
inline double norm(const Vec2& a) { return std::sqrt(norm2(a)); }
inline Vec2 perp_ccw(const Vec2& a) { return {-a.y, a.x}; }
inline Vec2 rotate(const Vec2& a, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

/// Strictly-before in (x, y) lexicographic order.
inline bool lex_less(const Vec2& a, const Vec2& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

/// Twice the signed area of triangle (a, b, c); > 0 when CCW.
inline double orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
  return cross(b - a, c - a);
}

struct Aabb {
  Vec2 min;
  Vec2 max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  double area() const { return width() * height(); }
  bool contains(const Vec2& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
  void expand(const Vec2& p) {
    min.x = std::min(min.x, p.x);
    min.y = std::min(min.y, p.y);
    max.x = std::max(max.x, p.x);
    max.y = std::max(max.y, p.y);
  }
};

/// Distance from p to segment [a, b].
double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

/// Proper or touching intersection of segments [a,b] and [c,d].
/// `proper_only` restricts to crossings at interior points of both segments.
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d,
                        bool proper_only);

/// Ray-casting point-in-polygon; boundary points (within tol) count as inside.
bool point_in_polygon(const Vec2& p, std::span<const Vec2> poly, double tol = 1e-9);

/// Twice the signed area of a polygon (CCW positive).
double polygon_signed_area2(std::span<const Vec2> poly);

/// Whether the polygon has >= 3 vertices and no two non-adjacent edges intersect.
bool polygon_is_simple(std::span<const Vec2> poly);

/// Indices of the convex hull in CCW order (strict: collinear mid-edge points
/// are omitted). Input of < 3 distinct points yields all distinct indices.
std::vector<int> convex_hull(std::span<const Vec2> pts);

}  // namespace hiertriple
