#pragma once

// Independent reference implementations used to pin expected values. These
// deliberately avoid the library's code paths: brute-force enumerations,
// closed-form solves and sampling, kept simple enough to audit by eye.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hiertriple/clustering.hpp"
#include "hiertriple/geometry.hpp"
#include "hiertriple/scene.hpp"

namespace oracles {

using hiertriple::Vec2;

struct BruteTriangulation {
  std::vector<std::array<int, 3>> triangles;  // sorted index triples, sorted list
  std::vector<int> hidden;
  bool degenerate = false;  // some triple was within tolerance of a tie
};

/// O(n^4) empty-circumcircle enumeration via explicit circumcenter solves.
BruteTriangulation brute_delaunay(const std::vector<Vec2>& pts, double tol = 1e-9);

/// O(n^4) empty-power-circle enumeration via explicit orthocenter solves.
BruteTriangulation brute_regular(const std::vector<Vec2>& pts,
                                 const std::vector<double>& weights,
                                 double tol = 1e-9);

/// Textbook DBSCAN over a metric matrix, ascending-index expansion.
/// Returns cluster label per point (noise = -1).
std::vector<int> brute_dbscan(const std::vector<std::vector<double>>& metric,
                              double eps, int min_samples);

/// Monte-Carlo overlap-area fraction of box b sampled against box a
/// (fraction of a's area covered by b).
double mc_overlap_fraction(const hiertriple::Footprint& a,
                           const hiertriple::Footprint& b, int samples,
                           std::uint64_t seed);

/// Plain ray-casting point-in-polygon (boundary not special-cased).
bool raycast_inside(const Vec2& p, const std::vector<Vec2>& poly);

/// Binary pixel IoU of two triangles via edge-sign point-in-triangle tests on
/// the same canvas mapping as the library (margin + scale passed explicitly).
double hard_pixel_iou(const std::array<Vec2, 3>& t1, const std::array<Vec2, 3>& t2,
                      int resolution, double margin);

/// Whether segments (a,b) and (c,d) properly cross (interior intersection).
bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

}  // namespace oracles
