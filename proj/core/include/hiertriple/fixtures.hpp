#pragma once

#include <cstdint>
#include <vector>

#include "hiertriple/scene.hpp"

namespace hiertriple {

/// Synthetic bedroom/living scenes with jittered parametric templates.
/// Deterministic per (seed, count); every scene passes validate_layout and
/// carries a rectangular floorplan. Living rooms place a small coffee table
/// amid heavy seating, which makes weighted triangulations hide it in a
/// meaningful share of draws.
std::vector<Layout> generate_fixtures(std::uint64_t seed, int count);

}  // namespace hiertriple
