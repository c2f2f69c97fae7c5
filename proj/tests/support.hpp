#pragma once

#include <random>
#include <string>
#include <vector>

#include "tamlab/io.hpp"
#include "tamlab/model.hpp"

namespace support {

using namespace tamlab;

inline std::string fixture(const std::string& name) {
  return std::string(TAMLAB_FIXTURES) + "/" + name;
}

inline TileAssemblySystem load(const std::string& name) {
  return parse_tas(read_file(fixture(name))).build();
}

inline Glue g(const std::string& label, int strength) { return Glue{label, strength}; }

/// Sides in N, E, S, W order; missing ones are NULL.
inline TileType tile(const std::string& name, Glue n = {}, Glue e = {}, Glue s = {}, Glue w = {},
                     bool black = false) {
  return TileType{name, {n, e, s, w}, black};
}

inline Assembly single(Vec2 p, TileId t) {
  Assembly a;
  a.place(p, t);
  return a;
}

/// Small random tile set over a tiny glue alphabet so that bonds are common.
inline TileSet random_tiles(std::mt19937_64& rng, int count, int max_strength) {
  const std::vector<std::string> labels{"a", "b", "c"};
  std::uniform_int_distribution<int> label(0, static_cast<int>(labels.size()));
  std::uniform_int_distribution<int> strength(1, max_strength);
  std::bernoulli_distribution black(0.5);
  TileSet tiles;
  for (int k = 0; k < count; ++k) {
    TileType t;
    t.name = "t" + std::to_string(k);
    for (auto& side : t.sides) {
      int l = label(rng);
      if (l < static_cast<int>(labels.size())) side = Glue{labels[l], strength(rng)};
    }
    t.black = black(rng);
    tiles.add(t);
  }
  return tiles;
}

}  // namespace support
