#include "tamlab/model.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <queue>
#include <set>

#include "tamlab/errors.hpp"

namespace tamlab {

std::string to_string(Vec2 p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

const char* to_string(Direction d) {
  switch (d) {
    case Direction::North: return "north";
    case Direction::East: return "east";
    case Direction::South: return "south";
    case Direction::West: return "west";
  }
  return "?";
}

bool direction_between(Vec2 from, Vec2 to, Direction& out) {
  for (Direction d : kDirections) {
    if (from + offset(d) == to) {
      out = d;
      return true;
    }
  }
  return false;
}

Window Window::make(Coord x0, Coord y0, Coord x1, Coord y1) {
  if (x0 > x1 || y0 > y1) {
    throw std::invalid_argument("window minimum exceeds maximum");
  }
  return Window{x0, y0, x1, y1};
}

std::string to_string(const Window& w) {
  return "[" + std::to_string(w.x_min) + ".." + std::to_string(w.x_max) + "]x[" +
         std::to_string(w.y_min) + ".." + std::to_string(w.y_max) + "]";
}

bool Glue::valid() const {
  if (is_null()) return strength == 0;
  if (strength < 1) return false;
  return std::none_of(label.begin(), label.end(),
                      [](unsigned char c) { return std::isspace(c) != 0; });
}

int interaction_strength(const TileType& a, const TileType& b, Direction d) {
  const Glue& ga = a.side(d);
  const Glue& gb = b.side(opposite(d));
  if (ga.is_null() || gb.is_null()) return 0;
  return ga == gb ? ga.strength : 0;
}

// ---------------------------------------------------------------------------
// TileSet

TileSet::TileSet(std::vector<TileType> tiles) {
  for (auto& t : tiles) add(std::move(t));
}

TileId TileSet::add(TileType tile) {
  if (tile.name.empty()) throw InvalidSystem("tile type with empty name");
  for (Direction d : kDirections) {
    if (!tile.side(d).valid()) {
      throw InvalidSystem("tile '" + tile.name + "' has an invalid " + to_string(d) + " glue");
    }
  }
  if (by_name_.count(tile.name)) throw InvalidSystem("duplicate tile name '" + tile.name + "'");
  auto id = static_cast<TileId>(tiles_.size());
  by_name_.emplace(tile.name, id);
  tiles_.push_back(std::move(tile));
  return id;
}

const TileType& TileSet::at(TileId id) const {
  if (!contains(id)) throw UnknownTileType("tile id " + std::to_string(id) + " not in tile set");
  return tiles_[id];
}

std::optional<TileId> TileSet::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Assembly

Assembly::Assembly(const std::vector<Placement>& placements) {
  for (const auto& pl : placements) place(pl.pos, pl.tile);
}

void Assembly::place(Vec2 p, TileId t) {
  auto [it, inserted] = cells_.emplace(p, t);
  if (!inserted) throw OccupiedPosition("position " + to_string(p) + " already occupied");
}

std::optional<TileId> Assembly::at(Vec2 p) const {
  auto it = cells_.find(p);
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

std::vector<Placement> Assembly::placements() const {
  std::vector<Placement> out;
  out.reserve(cells_.size());
  for (const auto& [p, t] : cells_) out.push_back({p, t});
  return out;
}

int attach_strength(const TileSet& tiles, const Assembly& assembly, Vec2 p, TileId t) {
  if (assembly.occupied(p)) throw OccupiedPosition("position " + to_string(p) + " occupied");
  const TileType& tile = tiles.at(t);
  int total = 0;
  for (Direction d : kDirections) {
    if (auto n = assembly.at(p + offset(d))) total += interaction_strength(tile, tiles.at(*n), d);
  }
  return total;
}

namespace {

// Dense symmetric weight matrix of the binding graph, indexed by canonical order.
std::vector<std::vector<long>> binding_weights(const TileSet& tiles, const Assembly& assembly,
                                               std::vector<Vec2>& order) {
  order.clear();
  for (const auto& [p, t] : assembly) order.push_back(p);
  std::map<Vec2, std::size_t> idx;
  for (std::size_t i = 0; i < order.size(); ++i) idx.emplace(order[i], i);
  std::vector<std::vector<long>> w(order.size(), std::vector<long>(order.size(), 0));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const TileType& a = tiles.at(*assembly.at(order[i]));
    for (Direction d : {Direction::East, Direction::North}) {
      auto it = idx.find(order[i] + offset(d));
      if (it == idx.end()) continue;
      const TileType& b = tiles.at(*assembly.at(it->first));
      long s = interaction_strength(a, b, d);
      w[i][it->second] += s;
      w[it->second][i] += s;
    }
  }
  return w;
}

bool connected(const std::vector<std::vector<long>>& w) {
  const std::size_t n = w.size();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      if (!seen[j] && w[i][j] > 0) {
        seen[j] = 1;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == n;
}

// Stoer-Wagner global minimum cut on a dense graph, O(n^3).
long min_cut(std::vector<std::vector<long>> w) {
  const std::size_t n = w.size();
  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;
  long best = std::numeric_limits<long>::max();
  while (active.size() > 1) {
    const std::size_t m = active.size();
    std::vector<long> key(m, 0);
    std::vector<char> added(m, 0);
    std::size_t prev = 0, last = 0;
    for (std::size_t step = 0; step < m; ++step) {
      std::size_t sel = m;
      for (std::size_t k = 0; k < m; ++k) {
        if (!added[k] && (sel == m || key[k] > key[sel])) sel = k;
      }
      added[sel] = 1;
      prev = last;
      last = sel;
      if (step + 1 == m) best = std::min(best, key[sel]);
      for (std::size_t k = 0; k < m; ++k) {
        if (!added[k]) key[k] += w[active[sel]][active[k]];
      }
    }
    // merge last into prev
    const std::size_t s = active[prev], t = active[last];
    for (std::size_t k = 0; k < n; ++k) {
      w[s][k] += w[t][k];
      w[k][s] = w[s][k];
    }
    w[s][s] = 0;
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(last));
  }
  return best;
}

}  // namespace

bool is_tau_stable(const TileSet& tiles, const Assembly& assembly, int temperature) {
  if (assembly.size() <= 1) return true;
  std::vector<Vec2> order;
  auto w = binding_weights(tiles, assembly, order);
  if (!connected(w)) return false;
  if (temperature <= 1) return true;
  return min_cut(std::move(w)) >= temperature;
}

bool is_adjacency_connected(const Assembly& assembly) {
  if (assembly.size() <= 1) return true;
  std::set<Vec2> seen;
  std::vector<Vec2> stack{assembly.begin()->first};
  seen.insert(stack.back());
  while (!stack.empty()) {
    Vec2 p = stack.back();
    stack.pop_back();
    for (Direction d : kDirections) {
      Vec2 q = p + offset(d);
      if (assembly.occupied(q) && seen.insert(q).second) stack.push_back(q);
    }
  }
  return seen.size() == assembly.size();
}

// ---------------------------------------------------------------------------
// TileAssemblySystem

TileAssemblySystem::TileAssemblySystem(TileSet tiles, Assembly seed, int temperature)
    : tiles_(std::move(tiles)), seed_(std::move(seed)), temperature_(temperature) {
  if (temperature_ < 1) throw InvalidSystem("temperature must be >= 1");
  if (seed_.empty()) throw InvalidSystem("seed assembly is empty");
  for (const auto& [p, t] : seed_) {
    if (!tiles_.contains(t)) throw InvalidSystem("seed tile at " + to_string(p) + " is unknown");
  }
  if (!is_adjacency_connected(seed_)) throw InvalidSystem("seed assembly is not connected");
  if (!is_tau_stable(tiles_, seed_, temperature_)) {
    throw InvalidSystem("seed assembly is not temperature-stable");
  }
  const std::size_t n = tiles_.size();
  for (Direction d : kDirections) {
    auto& table = bonds_[index(d)];
    table.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        table[a * n + b] = interaction_strength(tiles_[static_cast<TileId>(a)],
                                                tiles_[static_cast<TileId>(b)], d);
      }
    }
  }
}

int TileAssemblySystem::attach_strength(const Assembly& assembly, Vec2 p, TileId t) const {
  if (assembly.occupied(p)) throw OccupiedPosition("position " + to_string(p) + " occupied");
  if (!tiles_.contains(t)) throw UnknownTileType("tile id " + std::to_string(t) + " unknown");
  int total = 0;
  for (Direction d : kDirections) {
    if (auto n = assembly.at(p + offset(d))) total += bond(t, *n, d);
  }
  return total;
}

bool TileAssemblySystem::can_attach(const Assembly& assembly, Vec2 p, TileId t) const {
  if (!tiles_.contains(t)) throw UnknownTileType("tile id " + std::to_string(t) + " unknown");
  if (assembly.occupied(p)) return false;
  return attach_strength(assembly, p, t) >= temperature_;
}

}  // namespace tamlab
