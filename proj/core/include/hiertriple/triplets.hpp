#pragma once

#include <array>
#include <string>
#include <vector>

#include "hiertriple/clustering.hpp"
#include "hiertriple/scene.hpp"

namespace hiertriple {

enum class AnchorKind { ObjectCentroid, ObjectCorner, RegionCorner, VirtualPoint };

/// A symbolic triangle vertex. Centroid/corner anchors follow their object
/// when the layout changes; region corners and virtual points carry a fixed
/// normalized-space point and never move.
struct Anchor {
  AnchorKind kind = AnchorKind::ObjectCentroid;
  int object_id = -1;     // ObjectCentroid / ObjectCorner
  int region_id = -1;     // RegionCorner
  int corner_index = -1;  // ObjectCorner / RegionCorner, 0..3
  Vec2 fixed_point;       // RegionCorner / VirtualPoint, normalized space

  static Anchor centroid(int object_id);
  static Anchor corner(int object_id, int corner_index);
  static Anchor region_corner(int region_id, int corner_index, const Vec2& p);
  static Anchor virtual_point(const Vec2& p);
};

enum class TripletKind { O2R, O2O, C2C };

struct Triplet {
  TripletKind kind = TripletKind::O2O;
  std::array<Anchor, 3> anchors;
  int region_id = -1;
  /// Vertices resolved against the source layout at extraction time, in
  /// normalized space. This is the ground-truth triangle the losses target.
  std::array<Vec2, 3> gt;
};

enum class O2OStrategy { TwoNN, DT, WDT, PointLinks };

std::string to_string(O2OStrategy s);
O2OStrategy o2o_strategy_from_string(const std::string& s);

struct ExtractConfig {
  ClusterConfig cluster;
  O2OStrategy strategy = O2OStrategy::PointLinks;
};

struct TripletSet {
  std::vector<FunctionalRegion> regions;  // rects in input (scene) units
  NormalizationTransform transform;       // scene units -> normalized space
  std::vector<Triplet> o2r;
  std::vector<Triplet> o2o;
  std::vector<Triplet> c2c;
  ExtractConfig config;
  std::vector<std::string> diagnostics;  // skipped triplets etc.
};

/// Resolves the triplet's anchors against a layout in the extraction's
/// normalized frame. Throws std::invalid_argument on a dangling object id.
std::array<Vec2, 3> resolve(const Triplet& triplet, const Layout& layout);

/// O2R: the region's largest-footprint object joined with each adjacent pair
/// of region corners; candidates with an interior angle above 160 degrees or
/// near-zero area are dropped.
std::vector<Triplet> extract_o2r(const FunctionalRegion& region, const Layout& layout,
                                 const NormalizationTransform& t);

/// O2O per strategy. Two-object regions get a virtual equilateral apex on the
/// left of the id-ordered edge; single-object regions yield nothing.
/// Degenerate (collinear) configurations are skipped into `diagnostics`.
std::vector<Triplet> extract_o2o(const FunctionalRegion& region, const Layout& layout,
                                 const NormalizationTransform& t, O2OStrategy strategy,
                                 std::vector<std::string>* diagnostics = nullptr);

/// C2C from one O2O triplet: CDT of the 12 footprint corners constrained by
/// the box edges and the outer hull ring, keeping triangles outside all three
/// boxes whose vertices span exactly two objects. Triplets with overlapping
/// footprints or a virtual anchor are skipped with a diagnostic.
std::vector<Triplet> extract_c2c(const Triplet& o2o, const Layout& layout,
                                 const NormalizationTransform& t,
                                 std::vector<std::string>* diagnostics = nullptr);

/// Full pipeline: cluster -> O2R -> O2O -> C2C. Deterministic: byte-identical
/// across runs and input-order permutations of objects. Throws
/// std::invalid_argument when validate_layout reports violations.
TripletSet extract_all(const Layout& layout, const ExtractConfig& cfg = {});

std::string triplet_set_to_json(const TripletSet& set);
TripletSet triplet_set_from_json(const std::string& text);
TripletSet load_triplet_set(const std::string& path);
void save_triplet_set(const TripletSet& set, const std::string& path);

}  // namespace hiertriple
