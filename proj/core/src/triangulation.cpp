#include "hiertriple/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hiertriple {

namespace {

constexpr int kInf = -1;
constexpr double kDupTol2 = 1e-24;  // squared; points closer than 1e-12 alias

/// Power-circle conflict determinant for CCW (a, b, c) against query q.
/// det > 0: q strictly inside the orthocircle (conflict); det < 0: outside;
/// |det| within tolerance: on the circle. Zero weights give the classic
/// incircle predicate.
double conflict_det(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& q,
                    double wa, double wb, double wc, double wq) {
  const double ax = a.x - q.x, ay = a.y - q.y;
  const double bx = b.x - q.x, by = b.y - q.y;
  const double cx = c.x - q.x, cy = c.y - q.y;
  const double az = ax * ax + ay * ay - (wa - wq);
  const double bz = bx * bx + by * by - (wb - wq);
  const double cz = cx * cx + cy * cy - (wc - wq);
  return ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) +
         az * (bx * cy - by * cx);
}

struct WeightView {
  const std::vector<double>* w = nullptr;
  double operator[](int i) const { return w ? (*w)[i] : 0.0; }
};

std::array<int, 3> rotate_min_first(std::array<int, 3> t) {
  if (t[1] < t[0] && t[1] <= t[2]) return {t[1], t[2], t[0]};
  if (t[2] < t[0] && t[2] <= t[1]) return {t[2], t[0], t[1]};
  return t;
}

void finalize_triangles(std::vector<std::array<int, 3>>& tris) {
  for (auto& t : tris) t = rotate_min_first(t);
  std::sort(tris.begin(), tris.end());
  tris.erase(std::unique(tris.begin(), tris.end()), tris.end());
}

std::array<int, 3> sorted_triple(std::array<int, 3> t) {
  std::sort(t.begin(), t.end());
  return t;
}

/// Maps each point to its surviving duplicate (points closer than 1e-12).
/// With weights the heaviest duplicate survives (it dominates the power
/// diagram); ties and the unweighted case keep the lowest index.
std::vector<int> alias_duplicates(const std::vector<Vec2>& pts,
                                  const std::vector<double>* weights) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> rep(n);
  std::iota(rep.begin(), rep.end(), 0);
  for (int i = 0; i < n; ++i) {
    if (rep[i] != i) continue;
    for (int j = i + 1; j < n; ++j) {
      if (rep[j] != j) continue;
      if (norm2(pts[i] - pts[j]) <= kDupTol2) {
        if (weights && (*weights)[j] > (*weights)[i]) {
          rep[i] = j;
          for (int k = 0; k < j; ++k)
            if (rep[k] == i) rep[k] = j;
          break;
        }
        rep[j] = i;
      }
    }
  }
  for (int i = 0; i < n; ++i) rep[i] = rep[rep[i]];
  return rep;
}

bool all_collinear(const std::vector<Vec2>& pts, const std::vector<int>& active) {
  if (active.size() < 3) return true;
  // The two lex-extreme points span the set; anything off their support line
  // certifies 2D extent.
  int lo = active[0], hi = active[0];
  for (int i : active) {
    if (lex_less(pts[i], pts[lo])) lo = i;
    if (lex_less(pts[hi], pts[i])) hi = i;
  }
  if (lo == hi) return true;
  const double span = norm(pts[hi] - pts[lo]);
  for (int i : active)
    if (std::abs(orient2d(pts[lo], pts[hi], pts[i])) >
        kPredicateTol * std::max(1.0, span))
      return false;
  return true;
}

using EdgeKey = std::pair<int, int>;
EdgeKey undirected(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

// ---------------------------------------------------------------------------
// Canonical triangulation of a convex polygon (cocircular tie resolution):
// greedily insert the lexicographically smallest non-crossing diagonals, then
// split recursively. Both triangulators and the CDT resolve ties through this
// one routine, so tied configurations come out identical everywhere.
// ---------------------------------------------------------------------------

void split_polygon(const std::vector<Vec2>& pts, const std::vector<int>& poly,
                   std::vector<EdgeKey> chords,
                   std::vector<std::array<int, 3>>& out) {
  const int m = static_cast<int>(poly.size());
  if (m < 3) return;
  if (m == 3) {
    std::array<int, 3> t{poly[0], poly[1], poly[2]};
    if (orient2d(pts[t[0]], pts[t[1]], pts[t[2]]) < 0) std::swap(t[1], t[2]);
    out.push_back(t);
    return;
  }
  if (chords.empty()) {  // maximal chord sets never leave a >3-gon
    for (int i = 1; i + 1 < m; ++i) {
      std::array<int, 3> t{poly[0], poly[i], poly[i + 1]};
      if (orient2d(pts[t[0]], pts[t[1]], pts[t[2]]) < 0) std::swap(t[1], t[2]);
      out.push_back(t);
    }
    return;
  }
  const EdgeKey cut = chords.front();
  chords.erase(chords.begin());
  int pu = -1, pv = -1;
  for (int i = 0; i < m; ++i) {
    if (poly[i] == cut.first) pu = i;
    if (poly[i] == cut.second) pv = i;
  }
  if (pu > pv) std::swap(pu, pv);
  std::vector<int> side1(poly.begin() + pu, poly.begin() + pv + 1);
  std::vector<int> side2(poly.begin() + pv, poly.end());
  side2.insert(side2.end(), poly.begin(), poly.begin() + pu + 1);

  auto in_side = [](const std::vector<int>& side, const EdgeKey& c) {
    return std::find(side.begin(), side.end(), c.first) != side.end() &&
           std::find(side.begin(), side.end(), c.second) != side.end();
  };
  std::vector<EdgeKey> c1, c2;
  for (const auto& c : chords) (in_side(side1, c) ? c1 : c2).push_back(c);
  split_polygon(pts, side1, std::move(c1), out);
  split_polygon(pts, side2, std::move(c2), out);
}

/// `poly` holds vertex ids in convex CCW order.
std::vector<std::array<int, 3>> canonical_polygon_triangulation(
    const std::vector<Vec2>& pts, const std::vector<int>& poly) {
  const int m = static_cast<int>(poly.size());
  std::vector<std::array<int, 3>> out;
  if (m < 3) return out;

  std::set<EdgeKey> boundary;
  for (int i = 0; i < m; ++i) boundary.insert(undirected(poly[i], poly[(i + 1) % m]));
  std::vector<EdgeKey> candidates;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const EdgeKey k = undirected(poly[i], poly[j]);
      if (!boundary.count(k)) candidates.push_back(k);
    }
  auto diag_key = [&](const EdgeKey& e) {
    Vec2 a = pts[e.first], b = pts[e.second];
    if (lex_less(b, a)) std::swap(a, b);
    return std::array<double, 4>{a.x, a.y, b.x, b.y};
  };
  std::sort(candidates.begin(), candidates.end(),
            [&](const EdgeKey& x, const EdgeKey& y) { return diag_key(x) < diag_key(y); });
  std::vector<EdgeKey> kept;
  for (const auto& c : candidates) {
    const bool crosses = std::any_of(kept.begin(), kept.end(), [&](const EdgeKey& k) {
      return segments_intersect(pts[c.first], pts[c.second], pts[k.first],
                                pts[k.second], /*proper_only=*/true);
    });
    if (!crosses) kept.push_back(c);
  }
  split_polygon(pts, poly, kept, out);
  return out;
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void merge(int a, int b) { p[find(a)] = find(b); }
};

/// Merges edge-adjacent triangles whose four weighted vertices are
/// co-orthospherical within tolerance and re-triangulates each merged region
/// canonically. `blocked` edges (constraints) never merge.
void canonicalize_ties(const std::vector<Vec2>& pts, WeightView w,
                       std::vector<std::array<int, 3>>& tris,
                       const std::set<EdgeKey>* blocked) {
  const int nt = static_cast<int>(tris.size());
  if (nt < 2) return;

  std::map<EdgeKey, std::vector<int>> edge_tris;
  for (int i = 0; i < nt; ++i)
    for (int e = 0; e < 3; ++e)
      edge_tris[undirected(tris[i][e], tris[i][(e + 1) % 3])].push_back(i);

  Dsu dsu(nt);
  bool any = false;
  for (const auto& [edge, adj] : edge_tris) {
    if (adj.size() != 2) continue;
    if (blocked && blocked->count(edge)) continue;
    const auto& t1 = tris[adj[0]];
    const auto& t2 = tris[adj[1]];
    int d = -1;
    for (int v : t2)
      if (v != edge.first && v != edge.second) d = v;
    const double det = conflict_det(pts[t1[0]], pts[t1[1]], pts[t1[2]], pts[d],
                                    w[t1[0]], w[t1[1]], w[t1[2]], w[d]);
    if (std::abs(det) <= kPredicateTol) {
      dsu.merge(adj[0], adj[1]);
      any = true;
    }
  }
  if (!any) return;

  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < nt; ++i) groups[dsu.find(i)].push_back(i);

  std::vector<std::array<int, 3>> result;
  for (const auto& [root, members] : groups) {
    if (members.size() == 1) {
      result.push_back(tris[members[0]]);
      continue;
    }
    // Boundary loop of the merged region; triangles are CCW so the walk is
    // CCW. Cocircular vertices in loop order form a convex polygon.
    std::set<EdgeKey> inside;
    for (int m : members)
      for (int e = 0; e < 3; ++e) inside.insert({tris[m][e], tris[m][(e + 1) % 3]});
    std::map<int, int> next;
    for (const auto& [u, v] : inside)
      if (!inside.count({v, u})) next[u] = v;
    std::vector<int> poly;
    const int start = next.begin()->first;
    int cur = start;
    bool closed = false;
    while (poly.size() <= next.size()) {
      poly.push_back(cur);
      cur = next.at(cur);
      if (cur == start) {
        closed = true;
        break;
      }
    }
    if (!closed || poly.size() != next.size()) {
      // Walk failed (should not happen); keep the original triangles.
      for (int m : members) result.push_back(tris[m]);
      continue;
    }
    const auto canon = canonical_polygon_triangulation(pts, poly);
    result.insert(result.end(), canon.begin(), canon.end());
  }
  tris = std::move(result);
}

// ---------------------------------------------------------------------------
// Delaunay triangulation: incremental insertion with a symbolic far vertex.
//
// Triangles are stored as vertex cycles with the region to the left of every
// directed edge; an infinite triangle (s, t, kInf) owns the open region left
// of (s -> t), i.e. outside hull edge (t -> s).
// ---------------------------------------------------------------------------

class InsertionTriangulator {
 public:
  explicit InsertionTriangulator(const std::vector<Vec2>& pts) : pts_(pts) {}

  void init(int a, int b, int c) {
    if (orient2d(pts_[a], pts_[b], pts_[c]) < 0) std::swap(b, c);
    tris_.push_back({a, b, c});
    tris_.push_back({b, a, kInf});
    tris_.push_back({c, b, kInf});
    tris_.push_back({a, c, kInf});
  }

  void insert(int p) {
    std::vector<int> cavity;
    for (int i = 0; i < static_cast<int>(tris_.size()); ++i)
      if (in_conflict(tris_[i], p)) cavity.push_back(i);
    if (cavity.empty())
      throw std::logic_error("delaunay: insertion found no conflict region");

    std::set<EdgeKey> cavity_edges;
    for (int i : cavity)
      for (int e = 0; e < 3; ++e)
        cavity_edges.insert({tris_[i][e], tris_[i][(e + 1) % 3]});

    std::vector<std::array<int, 3>> fresh;
    for (const auto& [u, v] : cavity_edges) {
      if (cavity_edges.count({v, u})) continue;  // interior to the cavity
      std::array<int, 3> t{u, v, p};
      while (t[2] != kInf && (t[0] == kInf || t[1] == kInf))
        t = {t[1], t[2], t[0]};
      fresh.push_back(t);
    }
    std::sort(cavity.rbegin(), cavity.rend());
    for (int i : cavity) {
      tris_[i] = tris_.back();
      tris_.pop_back();
    }
    tris_.insert(tris_.end(), fresh.begin(), fresh.end());
  }

  std::vector<std::array<int, 3>> finite_triangles() const {
    std::vector<std::array<int, 3>> out;
    for (const auto& t : tris_)
      if (t[0] != kInf && t[1] != kInf && t[2] != kInf) out.push_back(t);
    return out;
  }

 private:
  bool in_conflict(const std::array<int, 3>& t, int p) const {
    if (t[0] != kInf && t[1] != kInf && t[2] != kInf)
      return conflict_det(pts_[t[0]], pts_[t[1]], pts_[t[2]], pts_[p], 0, 0, 0, 0) >
             kPredicateTol;
    const int s = t[0], u = t[1];  // kInf normalized into slot 2
    const double o = orient2d(pts_[s], pts_[u], pts_[p]);
    if (o > kPredicateTol) return true;
    if (o < -kPredicateTol) return false;
    // On the hull support line: conflict only strictly within the edge span
    // (the point-on-hull-edge insertion case).
    const Vec2 d = pts_[u] - pts_[s];
    const double proj = dot(pts_[p] - pts_[s], d);
    return proj > 0.0 && proj < norm2(d);
  }

  const std::vector<Vec2>& pts_;
  std::vector<std::array<int, 3>> tris_;
};

std::vector<std::array<int, 3>> delaunay_raw(const std::vector<Vec2>& pts,
                                             const std::vector<int>& active) {
  // Lexicographic insertion order: reproducible, and every point skipped by
  // the seed search lands on or beyond the hull support line, which the
  // insertion handles.
  std::vector<int> order = active;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
    if (pts[a].y != pts[b].y) return pts[a].y < pts[b].y;
    return a < b;
  });

  const int v0 = order[0];
  const int v1 = order[1];
  int seed = -1;
  for (size_t k = 2; k < order.size(); ++k) {
    if (std::abs(orient2d(pts[v0], pts[v1], pts[order[k]])) > kPredicateTol) {
      seed = static_cast<int>(k);
      break;
    }
  }
  if (seed < 0) throw std::invalid_argument("delaunay: input points are collinear");

  InsertionTriangulator tri(pts);
  tri.init(v0, v1, order[seed]);
  for (size_t k = 2; k < order.size(); ++k) {
    if (static_cast<int>(k) == seed) continue;
    tri.insert(order[k]);
  }
  return tri.finite_triangles();
}

std::vector<int> absent_indices(int n, const std::vector<std::array<int, 3>>& tris) {
  std::vector<bool> used(n, false);
  for (const auto& t : tris)
    for (int v : t) used[v] = true;
  std::vector<int> hidden;
  for (int i = 0; i < n; ++i)
    if (!used[i]) hidden.push_back(i);
  return hidden;
}

}  // namespace

bool TriangulationResult::uses(int idx) const {
  for (const auto& t : triangles)
    for (int v : t)
      if (v == idx) return true;
  return false;
}

TriangulationResult delaunay(const std::vector<Vec2>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw std::invalid_argument("delaunay: need at least 3 points");
  const std::vector<int> rep = alias_duplicates(points, nullptr);
  std::vector<int> active;
  for (int i = 0; i < n; ++i)
    if (rep[i] == i) active.push_back(i);
  if (all_collinear(points, active))
    throw std::invalid_argument("delaunay: input points are collinear");

  TriangulationResult result;
  result.points = points;
  result.triangles = delaunay_raw(points, active);
  canonicalize_ties(points, WeightView{}, result.triangles, nullptr);
  finalize_triangles(result.triangles);
  result.hidden = absent_indices(n, result.triangles);
  return result;
}

TriangulationResult weighted_delaunay(const std::vector<Vec2>& points,
                                      const std::vector<double>& weights) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw std::invalid_argument("weighted_delaunay: need at least 3 points");
  if (weights.size() != points.size())
    throw std::invalid_argument("weighted_delaunay: weights size mismatch");
  for (double w : weights)
    if (!(w >= 0.0)) throw std::invalid_argument("weighted_delaunay: negative weight");

  const std::vector<int> rep = alias_duplicates(points, &weights);
  std::vector<int> active;
  for (int i = 0; i < n; ++i)
    if (rep[i] == i) active.push_back(i);
  if (all_collinear(points, active))
    throw std::invalid_argument("weighted_delaunay: input points are collinear");

  WeightView w{&weights};
  auto facet_valid = [&](int a, int b, int c) {
    for (int q : active) {
      if (q == a || q == b || q == c) continue;
      if (conflict_det(points[a], points[b], points[c], points[q], w[a], w[b], w[c],
                       w[q]) > kPredicateTol)
        return false;
    }
    return true;
  };

  // Gift-wrap the lifted lower hull: find one valid facet, then grow across
  // directed edges. Coplanar (cocircular, co-weighted) faces are triangulated
  // as a unit through the canonical routine so the lacing cannot self-cross.
  std::set<std::array<int, 3>> seen;
  std::set<EdgeKey> left_covered;
  std::vector<EdgeKey> frontier;
  std::vector<std::array<int, 3>> tris;

  auto add_facet = [&](int a, int b, int c) {
    if (!seen.insert(sorted_triple({a, b, c})).second) return;
    tris.push_back({a, b, c});
    const std::array<EdgeKey, 3> fwd{{{a, b}, {b, c}, {c, a}}};
    for (const auto& e : fwd) left_covered.insert(e);
    for (const auto& e : fwd)
      if (!left_covered.count({e.second, e.first}))
        frontier.push_back({e.second, e.first});
  };

  auto emit_face = [&](int a, int b, int c) {
    std::vector<int> face{a, b, c};
    for (int q : active) {
      if (q == a || q == b || q == c) continue;
      if (std::abs(conflict_det(points[a], points[b], points[c], points[q], w[a],
                                w[b], w[c], w[q])) <= kPredicateTol)
        face.push_back(q);
    }
    if (face.size() == 3) {
      add_facet(a, b, c);
      return;
    }
    std::vector<Vec2> face_pts;
    for (int v : face) face_pts.push_back(points[v]);
    const std::vector<int> hull = convex_hull(face_pts);
    std::vector<int> poly;
    for (int h : hull) poly.push_back(face[h]);
    for (const auto& t : canonical_polygon_triangulation(points, poly))
      add_facet(t[0], t[1], t[2]);
  };

  std::array<int, 3> start{-1, -1, -1};
  const int na = static_cast<int>(active.size());
  for (int i = 0; i < na && start[0] < 0; ++i)
    for (int j = i + 1; j < na && start[0] < 0; ++j)
      for (int k = j + 1; k < na && start[0] < 0; ++k) {
        int a = active[i], b = active[j], c = active[k];
        const double o = orient2d(points[a], points[b], points[c]);
        if (std::abs(o) <= kPredicateTol) continue;
        if (o < 0) std::swap(b, c);
        if (facet_valid(a, b, c)) start = {a, b, c};
      }
  if (start[0] < 0)
    throw std::logic_error("weighted_delaunay: no starting facet found");
  emit_face(start[0], start[1], start[2]);

  while (!frontier.empty()) {
    const auto [u, v] = frontier.back();
    frontier.pop_back();
    if (left_covered.count({u, v})) continue;
    int best = -1;
    for (int c : active) {
      if (c == u || c == v) continue;
      if (orient2d(points[u], points[v], points[c]) <= kPredicateTol) continue;
      if (facet_valid(u, v, c)) {
        best = c;
        break;
      }
    }
    if (best >= 0) emit_face(u, v, best);
  }

  TriangulationResult result;
  result.points = points;
  result.weights = weights;
  result.triangles = std::move(tris);
  canonicalize_ties(points, w, result.triangles, nullptr);
  finalize_triangles(result.triangles);
  result.hidden = absent_indices(n, result.triangles);
  return result;
}

TriangulationResult point_link_repair(const TriangulationResult& input) {
  TriangulationResult result = input;
  if (input.hidden.empty()) return result;
  const auto& pts = input.points;

  auto contains = [&](const std::array<int, 3>& t, const Vec2& p) {
    for (int e = 0; e < 3; ++e)
      if (orient2d(pts[t[e]], pts[t[(e + 1) % 3]], p) < -kPredicateTol) return false;
    return true;
  };

  std::map<int, std::vector<int>> bucket;  // triangle index -> hidden points
  std::vector<int> unplaced;
  for (int h : input.hidden) {
    int found = -1;
    for (int i = 0; i < static_cast<int>(input.triangles.size()); ++i)
      if (contains(input.triangles[i], pts[h])) {
        found = i;
        break;
      }
    if (found >= 0)
      bucket[found].push_back(h);
    else
      unplaced.push_back(h);
  }

  std::vector<std::array<int, 3>> tris;
  for (int i = 0; i < static_cast<int>(input.triangles.size()); ++i) {
    auto it = bucket.find(i);
    if (it == bucket.end()) {
      tris.push_back(input.triangles[i]);
      continue;
    }
    // Local Delaunay of the triangle plus its interior hidden points fans
    // them in, replacing the single coarse triangle.
    std::vector<int> local{input.triangles[i][0], input.triangles[i][1],
                           input.triangles[i][2]};
    local.insert(local.end(), it->second.begin(), it->second.end());
    std::vector<Vec2> local_pts;
    for (int v : local) local_pts.push_back(pts[v]);
    const TriangulationResult sub = delaunay(local_pts);
    for (const auto& t : sub.triangles)
      tris.push_back({local[t[0]], local[t[1]], local[t[2]]});
  }

  // Hull-exterior hidden points: connect each to its two nearest
  // triangulation vertices that give a non-degenerate triangle.
  if (!unplaced.empty()) {
    std::set<int> vertex_set;
    for (const auto& t : tris)
      for (int v : t) vertex_set.insert(v);
    for (int h : unplaced) {
      std::vector<int> verts(vertex_set.begin(), vertex_set.end());
      std::sort(verts.begin(), verts.end(), [&](int a, int b) {
        const double da = norm2(pts[a] - pts[h]);
        const double db = norm2(pts[b] - pts[h]);
        return da != db ? da < db : a < b;
      });
      bool linked = false;
      for (size_t j = 1; j < verts.size() && !linked; ++j)
        for (size_t i = 0; i < j && !linked; ++i) {
          std::array<int, 3> t{h, verts[i], verts[j]};
          const double o = orient2d(pts[t[0]], pts[t[1]], pts[t[2]]);
          if (std::abs(o) <= kPredicateTol) continue;
          if (o < 0) std::swap(t[1], t[2]);
          tris.push_back(t);
          linked = true;
        }
    }
  }

  finalize_triangles(tris);
  result.triangles = std::move(tris);
  result.hidden = absent_indices(static_cast<int>(pts.size()), result.triangles);
  return result;
}

// ---------------------------------------------------------------------------
// Constrained Delaunay triangulation.
// ---------------------------------------------------------------------------

namespace {

/// Pseudo-polygon retriangulation against base edge (u, v): picks the chain
/// vertex whose circumcircle with the base is empty of chain vertices, then
/// recurses on the sub-chains.
void retriangulate_chain(const std::vector<Vec2>& pts, int u, int v,
                         const std::vector<int>& chain,
                         std::vector<std::array<int, 3>>& out) {
  if (chain.empty()) return;
  size_t pick = 0;
  for (size_t k = 1; k < chain.size(); ++k) {
    int a = u, b = v, c = chain[pick];
    if (orient2d(pts[a], pts[b], pts[c]) < 0) std::swap(a, b);
    if (conflict_det(pts[a], pts[b], pts[c], pts[chain[k]], 0, 0, 0, 0) >
        kPredicateTol)
      pick = k;
  }
  std::array<int, 3> t{u, v, chain[pick]};
  const double o = orient2d(pts[t[0]], pts[t[1]], pts[t[2]]);
  if (std::abs(o) > kPredicateTol) {
    if (o < 0) std::swap(t[1], t[2]);
    out.push_back(t);
  }
  retriangulate_chain(pts, u, chain[pick],
                      std::vector<int>(chain.begin(), chain.begin() + pick), out);
  retriangulate_chain(pts, chain[pick], v,
                      std::vector<int>(chain.begin() + pick + 1, chain.end()), out);
}

}  // namespace

TriangulationResult constrained_delaunay(
    const std::vector<Vec2>& points,
    const std::vector<std::array<int, 2>>& segments) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw std::invalid_argument("constrained_delaunay: need at least 3 points");
  for (const auto& s : segments)
    if (s[0] < 0 || s[0] >= n || s[1] < 0 || s[1] >= n)
      throw std::invalid_argument("constrained_delaunay: segment index out of range");

  const std::vector<int> rep = alias_duplicates(points, nullptr);
  std::vector<int> active;
  for (int i = 0; i < n; ++i)
    if (rep[i] == i) active.push_back(i);
  if (all_collinear(points, active))
    throw std::invalid_argument("constrained_delaunay: input points are collinear");

  // Subdivide constraints at vertices lying on them so no sub-segment keeps a
  // vertex in its interior; drop segments collapsed by duplicate aliasing.
  std::set<EdgeKey> subsegs;
  for (const auto& s : segments) {
    const int a = rep[s[0]], b = rep[s[1]];
    if (a == b) continue;
    const Vec2 pa = points[a], pb = points[b];
    const Vec2 d = pb - pa;
    const double len2 = norm2(d);
    std::vector<std::pair<double, int>> stops{{0.0, a}, {1.0, b}};
    for (int v : active) {
      if (v == a || v == b) continue;
      if (point_segment_distance(points[v], pa, pb) <= kPredicateTol) {
        const double t = dot(points[v] - pa, d) / len2;
        if (t > 0.0 && t < 1.0) stops.push_back({t, v});
      }
    }
    std::sort(stops.begin(), stops.end());
    for (size_t i = 0; i + 1 < stops.size(); ++i)
      subsegs.insert(undirected(stops[i].second, stops[i + 1].second));
  }
  {
    std::vector<EdgeKey> list(subsegs.begin(), subsegs.end());
    for (size_t i = 0; i < list.size(); ++i)
      for (size_t j = i + 1; j < list.size(); ++j)
        if (segments_intersect(points[list[i].first], points[list[i].second],
                               points[list[j].first], points[list[j].second],
                               /*proper_only=*/true))
          throw std::invalid_argument("constrained_delaunay: crossing segments");
  }

  std::vector<std::array<int, 3>> tris = delaunay_raw(points, active);

  for (const auto& seg : subsegs) {
    const int a = seg.first, b = seg.second;
    bool present = false;
    for (const auto& t : tris)
      for (int e = 0; e < 3 && !present; ++e)
        if (undirected(t[e], t[(e + 1) % 3]) == seg) present = true;
    if (present) continue;

    std::map<EdgeKey, int> dmap;
    for (int i = 0; i < static_cast<int>(tris.size()); ++i)
      for (int e = 0; e < 3; ++e) dmap[{tris[i][e], tris[i][(e + 1) % 3]}] = i;

    // Walk the triangle pipe from a to b, splitting crossed-edge endpoints
    // into the chains left and right of (a -> b).
    int current = -1;
    EdgeKey entry{-1, -1};
    for (int i = 0; i < static_cast<int>(tris.size()) && current < 0; ++i) {
      const auto& t = tris[i];
      if (t[0] != a && t[1] != a && t[2] != a) continue;
      int e = 0;
      while (t[e] == a || t[(e + 1) % 3] == a) ++e;
      const int u = t[e], v = t[(e + 1) % 3];
      if (segments_intersect(points[a], points[b], points[u], points[v],
                             /*proper_only=*/true)) {
        current = i;
        entry = {u, v};
      }
    }
    if (current < 0)
      throw std::logic_error("constrained_delaunay: lost constraint walk start");

    std::vector<int> upper, lower;
    std::vector<int> removed{current};
    auto classify = [&](const EdgeKey& e) {
      for (int x : {e.first, e.second}) {
        auto& chain = orient2d(points[a], points[b], points[x]) > 0 ? upper : lower;
        if (chain.empty() || chain.back() != x) chain.push_back(x);
      }
    };
    classify(entry);
    int guard = 0;
    while (true) {
      if (++guard > 4 * static_cast<int>(tris.size()))
        throw std::logic_error("constrained_delaunay: runaway constraint walk");
      const auto it = dmap.find({entry.second, entry.first});
      if (it == dmap.end())
        throw std::logic_error("constrained_delaunay: open pipe boundary");
      current = it->second;
      removed.push_back(current);
      const auto& t = tris[current];
      if (t[0] == b || t[1] == b || t[2] == b) break;
      bool advanced = false;
      for (int e = 0; e < 3 && !advanced; ++e) {
        const EdgeKey cand{t[e], t[(e + 1) % 3]};
        if (undirected(cand.first, cand.second) ==
            undirected(entry.first, entry.second))
          continue;
        if (segments_intersect(points[a], points[b], points[cand.first],
                               points[cand.second], /*proper_only=*/true)) {
          entry = cand;
          classify(cand);
          advanced = true;
        }
      }
      if (!advanced)
        throw std::logic_error("constrained_delaunay: constraint walk stalled");
    }

    std::sort(removed.begin(), removed.end());
    removed.erase(std::unique(removed.begin(), removed.end()), removed.end());
    for (auto rit = removed.rbegin(); rit != removed.rend(); ++rit) {
      tris[*rit] = tris.back();
      tris.pop_back();
    }
    retriangulate_chain(points, a, b, upper, tris);
    retriangulate_chain(points, a, b, lower, tris);
  }

  canonicalize_ties(points, WeightView{}, tris, &subsegs);
  finalize_triangles(tris);

  TriangulationResult result;
  result.points = points;
  result.triangles = std::move(tris);
  result.hidden = absent_indices(n, result.triangles);
  return result;
}

}  // namespace hiertriple
