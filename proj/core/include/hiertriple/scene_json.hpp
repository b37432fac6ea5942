#pragma once

#include <string>

#include "hiertriple/scene.hpp"

namespace hiertriple {

/// Parses the scene document
///   {"objects":[{"id":..,"category":..,"size":[x,y,z],"position":[x,y,z],
///                "orientation":[cos,sin],"feature":[f0..f31]?}],
///    "floorplan":[[x,y],...]?}
/// Unknown keys are rejected. Bounds are filled via default_bounds().
/// Throws std::runtime_error with a byte-offset diagnostic on parse failure
/// and std::invalid_argument on schema violations.
Layout parse_scene_json(const std::string& text);

Layout load_scene(const std::string& path);

/// Canonical serialization: objects sorted by id, shortest-roundtrip floats.
/// Byte-identical output for equal layouts.
std::string scene_to_json(const Layout& layout);

void save_scene(const Layout& layout, const std::string& path);

}  // namespace hiertriple
