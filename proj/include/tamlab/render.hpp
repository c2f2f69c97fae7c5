#pragma once

#include <string>

#include "tamlab/model.hpp"

namespace tamlab {

/// Text grid, top row is y_max. `.` is empty; otherwise the first character of the tile
/// name, or `#` / `*` for black / non-black tiles when compact.
std::string render_ascii(const TileSet& tiles, const Assembly& assembly, const Window& w,
                         bool compact);

/// One unit square per tile in w, y-up, black fill for black tiles, seed cells outlined.
std::string render_svg(const TileSet& tiles, const Assembly& assembly, const Assembly& seed,
                       const Window& w);

}  // namespace tamlab
