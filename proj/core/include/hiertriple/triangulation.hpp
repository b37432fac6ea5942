#pragma once

#include <array>
#include <vector>

#include "hiertriple/geometry.hpp"

namespace hiertriple {

/// Triangles index into `points`. `hidden` lists indices absent from every
/// triangle (weighted points with empty power cells, or exact duplicates
/// aliased away). Triangles are CCW, rotated so the smallest index leads, and
/// the list is sorted — equal inputs give byte-equal results.
struct TriangulationResult {
  std::vector<Vec2> points;
  std::vector<double> weights;  // empty for unweighted runs
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> hidden;

  bool uses(int idx) const;
};

/// Tolerance applied by all triangulation predicates (coordinates are
/// expected near unit scale; callers pass normalized coordinates).
inline constexpr double kPredicateTol = 1e-9;

/// Delaunay triangulation via incremental insertion (Bowyer-Watson with a
/// symbolic far vertex). Cocircular ties resolve to the lexicographically
/// smallest diagonal. Throws std::invalid_argument for < 3 points or fully
/// collinear input.
TriangulationResult delaunay(const std::vector<Vec2>& points);

/// Regular triangulation (dual of the power diagram) via lifted lower-hull
/// gift wrapping. Weights must be >= 0 and match `points` in size. Points
/// with empty power cells are reported in `hidden`. Zero weights reproduce
/// delaunay() exactly.
TriangulationResult weighted_delaunay(const std::vector<Vec2>& points,
                                      const std::vector<double>& weights);

/// Restores full coverage after weighted_delaunay: hidden points inside a
/// triangle replace it with the local Delaunay fan of {triangle vertices,
/// those points}; hidden points outside the hull are linked to their two
/// nearest triangulation vertices. The output is a triangle set for
/// relationship extraction, not necessarily a planar subdivision.
TriangulationResult point_link_repair(const TriangulationResult& result);

/// Constrained Delaunay triangulation of a planar straight-line graph.
/// Segments index into `points`, may share endpoints, and are subdivided at
/// vertices lying on them; properly crossing segments throw
/// std::invalid_argument. Every (sub)segment appears as a triangle edge and
/// no triangle edge crosses a constraint.
TriangulationResult constrained_delaunay(
    const std::vector<Vec2>& points,
    const std::vector<std::array<int, 2>>& segments);

}  // namespace hiertriple
