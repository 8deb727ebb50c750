#pragma once

#include <optional>
#include <string>

#include "fsr/subdivision.hpp"

namespace fsr {

struct RenderSpec {
  int level = 0;
  /// A single base tile, or one panel per base tile when empty.
  std::optional<int> base_tile;
};

/// SVG drawing of one tower level. Each base tile becomes a panel holding
/// the level-n tiles it carries, placed by a harmonic embedding with the
/// panel boundary fixed on a regular polygon. Tiles are filled by their
/// image type in the base complex. Output is deterministic.
std::string render_svg(SubdivisionTower& t, const RenderSpec& spec);

}  // namespace fsr
