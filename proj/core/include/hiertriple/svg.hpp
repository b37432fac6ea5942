#pragma once

#include <optional>
#include <string>

#include "hiertriple/scene.hpp"
#include "hiertriple/triplets.hpp"

namespace hiertriple {

struct RenderStyle {
  std::string o2r_color = "#1f77b4";
  std::string o2o_color = "#2ca02c";
  std::string c2c_color = "#d62728";
  std::string footprint_color = "#444444";
  std::string region_color = "#9467bd";
  double region_opacity = 0.12;
  int canvas = 640;  // SVG units per side
};

/// Deterministic SVG bytes: footprints, region rectangles and triplet
/// triangles layered by kind, fixed float formatting. Throws
/// std::invalid_argument on malformed style colors or triplet anchors
/// referencing unknown object ids.
std::string render_scene_svg(const Layout& layout,
                             const TripletSet* triplets = nullptr,
                             const RenderStyle& style = {});

}  // namespace hiertriple
