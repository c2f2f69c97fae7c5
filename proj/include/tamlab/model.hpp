#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tamlab/geometry.hpp"

namespace tamlab {

/// A side label. The empty label is the NULL glue and always has strength 0.
struct Glue {
  std::string label;
  int strength = 0;

  static Glue null() { return {}; }
  bool is_null() const { return label.empty(); }
  /// NULL <=> strength 0; labels carry no whitespace.
  bool valid() const;

  friend bool operator==(const Glue&, const Glue&) = default;
};

struct TileType {
  std::string name;
  std::array<Glue, 4> sides;  // indexed by Direction
  bool black = false;

  const Glue& side(Direction d) const { return sides[index(d)]; }
  Glue& side(Direction d) { return sides[index(d)]; }

  friend bool operator==(const TileType&, const TileType&) = default;
};

/// Strength with which a (at some position) binds b placed at the neighbour in direction d.
/// Both glues must be non-NULL and agree on label and strength; anything else is 0.
int interaction_strength(const TileType& a, const TileType& b, Direction d);

using TileId = std::uint32_t;

/// Tile types with unique names; ids are insertion indices.
class TileSet {
 public:
  TileSet() = default;
  explicit TileSet(std::vector<TileType> tiles);

  /// Throws InvalidSystem on duplicate names, empty names or invalid glues.
  TileId add(TileType tile);

  std::size_t size() const { return tiles_.size(); }
  bool contains(TileId id) const { return id < tiles_.size(); }
  const TileType& at(TileId id) const;
  const TileType& operator[](TileId id) const { return tiles_[id]; }
  std::optional<TileId> find(const std::string& name) const;
  const std::vector<TileType>& tiles() const { return tiles_; }

  auto begin() const { return tiles_.begin(); }
  auto end() const { return tiles_.end(); }

 private:
  std::vector<TileType> tiles_;
  std::unordered_map<std::string, TileId> by_name_;
};

struct Placement {
  Vec2 pos;
  TileId tile = 0;

  friend auto operator<=>(const Placement&, const Placement&) = default;
};

/// Finite partial map from lattice points to tile ids.
class Assembly {
 public:
  using Map = std::map<Vec2, TileId>;

  Assembly() = default;
  explicit Assembly(const std::vector<Placement>& placements);

  /// Throws OccupiedPosition if p is already filled.
  void place(Vec2 p, TileId t);

  bool occupied(Vec2 p) const { return cells_.count(p) != 0; }
  std::optional<TileId> at(Vec2 p) const;
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  /// Canonical form: placements sorted by position.
  std::vector<Placement> placements() const;
  const Map& cells() const { return cells_; }

  auto begin() const { return cells_.begin(); }
  auto end() const { return cells_.end(); }

  friend bool operator==(const Assembly&, const Assembly&) = default;

 private:
  Map cells_;
};

/// Sum of interaction strengths between t at p and the occupied neighbours of p.
/// Throws OccupiedPosition if p is filled.
int attach_strength(const TileSet& tiles, const Assembly& assembly, Vec2 p, TileId t);

/// True iff every 2-partition of the assembly is held together with strength >= temperature.
/// Empty and singleton assemblies are stable.
bool is_tau_stable(const TileSet& tiles, const Assembly& assembly, int temperature);

/// Connectivity under plain cardinal adjacency (glues ignored).
bool is_adjacency_connected(const Assembly& assembly);

/// Tile set, seed and temperature. Immutable once built.
class TileAssemblySystem {
 public:
  /// Throws InvalidSystem if temperature < 1, the seed is empty, references unknown
  /// tiles, or is not a connected temperature-stable assembly.
  TileAssemblySystem(TileSet tiles, Assembly seed, int temperature);

  const TileSet& tiles() const { return tiles_; }
  const Assembly& seed() const { return seed_; }
  int temperature() const { return temperature_; }

  /// interaction_strength via a precomputed table.
  int bond(TileId a, TileId b, Direction d) const {
    return bonds_[index(d)][static_cast<std::size_t>(a) * tiles_.size() + b];
  }

  int attach_strength(const Assembly& assembly, Vec2 p, TileId t) const;

  /// Throws UnknownTileType if t is not in the tile set.
  bool can_attach(const Assembly& assembly, Vec2 p, TileId t) const;

 private:
  TileSet tiles_;
  Assembly seed_;
  int temperature_;
  std::array<std::vector<int>, 4> bonds_;
};

}  // namespace tamlab
