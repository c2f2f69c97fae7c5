#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tamlab/engine.hpp"
#include "tamlab/model.hpp"

namespace tamlab {

struct SeedEntry {
  Vec2 pos;
  std::string tile;
  friend bool operator==(const SeedEntry&, const SeedEntry&) = default;
};

/// Parsed tile assembly system file.
///
///   temperature <int>
///   tile <name> [black]
///     north <label|-> <strength>
///     east  <label|-> <strength>
///     south <label|-> <strength>
///     west  <label|-> <strength>
///   end
///   seed <x> <y> <name>
///
/// `#` starts a comment; `-` is the NULL glue and must have strength 0.
struct TasDocument {
  int temperature = 1;
  std::vector<TileType> tiles;
  std::vector<SeedEntry> seed;

  /// Throws InvalidSystem for semantic problems the grammar cannot see (disconnected or
  /// unstable seed).
  TileAssemblySystem build() const;
  friend bool operator==(const TasDocument&, const TasDocument&) = default;
};

/// Throws ParseError(line, message).
TasDocument parse_tas(std::string_view text);
std::string serialize_tas(const TasDocument& doc);

/// One `x y` pair per line, `#` comments, blank lines ignored. Throws ParseError.
PointSet parse_points(std::string_view text);
std::string format_points(const PointSet& points);

/// Reads a whole file; throws Error if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace tamlab
