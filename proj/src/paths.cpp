#include "tamlab/paths.hpp"

#include <algorithm>
#include <unordered_set>

#include "tamlab/errors.hpp"

namespace tamlab {

namespace {

void require_temperature_one(const TileAssemblySystem& system) {
  if (system.temperature() != 1) {
    throw WrongTemperature("path analysis needs temperature 1, system has temperature " +
                           std::to_string(system.temperature()));
  }
}

Coord chebyshev_diameter(const TilePath& path, std::size_t begin, std::size_t end) {
  if (begin >= end) return 0;
  Coord x0 = path[begin].pos.x, x1 = x0, y0 = path[begin].pos.y, y1 = y0;
  for (std::size_t k = begin; k < end; ++k) {
    x0 = std::min(x0, path[k].pos.x);
    x1 = std::max(x1, path[k].pos.x);
    y0 = std::min(y0, path[k].pos.y);
    y1 = std::max(y1, path[k].pos.y);
  }
  return std::max(x1 - x0, y1 - y0);
}

void check_repetition(const TilePath& path, std::size_t i, std::size_t j) {
  if (i >= j || j >= path.size()) {
    throw InvalidRepetition("indices (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") are not an ordered pair inside the path");
  }
  if (path[i].tile != path[j].tile) {
    throw InvalidRepetition("tile types at " + std::to_string(i) + " and " + std::to_string(j) +
                            " differ");
  }
  if (path[i].pos == path[j].pos) throw InvalidRepetition("repetition has zero displacement");
}

}  // namespace

bool is_valid_path(const TileAssemblySystem& system, const TilePath& path) {
  std::unordered_set<Vec2> seen;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (!system.tiles().contains(path[k].tile)) return false;
    if (!seen.insert(path[k].pos).second) return false;
    if (k == 0) continue;
    Direction d;
    if (!direction_between(path[k - 1].pos, path[k].pos, d)) return false;
    if (system.bond(path[k - 1].tile, path[k].tile, d) < 1) return false;
  }
  return true;
}

void for_each_producible_path(const TileAssemblySystem& system, std::size_t max_len,
                              const std::function<bool(const TilePath&)>& visit) {
  require_temperature_one(system);
  const auto n = static_cast<TileId>(system.tiles().size());
  std::unordered_set<Vec2> occupied;
  for (const auto& [p, t] : system.seed()) occupied.insert(p);

  TilePath path;
  bool stop = false;
  std::function<void()> extend = [&]() {
    if (!visit(path)) {
      stop = true;
      return;
    }
    if (path.size() > max_len) return;
    const Placement head = path.back();
    for (Direction d : kDirections) {
      Vec2 r = head.pos + offset(d);
      if (occupied.count(r)) continue;
      for (TileId t = 0; t < n && !stop; ++t) {
        if (system.bond(head.tile, t, d) < 1) continue;
        occupied.insert(r);
        path.push_back({r, t});
        extend();
        path.pop_back();
        occupied.erase(r);
      }
      if (stop) return;
    }
  };
  for (const auto& [p, t] : system.seed()) {
    path.assign(1, Placement{p, t});
    extend();
    if (stop) return;
  }
}

std::vector<TilePath> producible_paths(const TileAssemblySystem& system, std::size_t max_len) {
  std::vector<TilePath> out;
  for_each_producible_path(system, max_len, [&](const TilePath& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

std::vector<Repetition> repetitions(const TilePath& path) {
  std::vector<Repetition> out;
  for (std::size_t gap = 1; gap < path.size(); ++gap) {
    for (std::size_t i = 0; i + gap < path.size(); ++i) {
      if (path[i].tile == path[i + gap].tile) out.push_back({i, i + gap});
    }
  }
  return out;
}

std::variant<TilePath, Blocked> pump_k(const TilePath& path, std::size_t i, std::size_t j,
                                       std::size_t k) {
  check_repetition(path, i, j);
  const Vec2 d = path[j].pos - path[i].pos;
  TilePath out(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(j + 1));
  std::unordered_set<Vec2> laid;
  for (const auto& pl : out) laid.insert(pl.pos);
  out.reserve(j + 1 + k * (j - i));
  for (std::size_t c = 1; c <= k; ++c) {
    const Vec2 shift = static_cast<Coord>(c) * d;
    for (std::size_t s = i + 1; s <= j; ++s) {
      Vec2 q = path[s].pos + shift;
      if (!laid.insert(q).second) return Blocked{c, q};
      out.push_back({q, path[s].tile});
    }
  }
  return out;
}

std::size_t pump_bound(const TilePath& path, std::size_t i, std::size_t j) {
  check_repetition(path, i, j);
  const Coord step = (path[j].pos - path[i].pos).norm_inf();
  const Coord reach = chebyshev_diameter(path, i, j) + chebyshev_diameter(path, 0, j);
  return static_cast<std::size_t>((reach + step - 1) / step) + 1;
}

PumpVerdict is_pumpable(const TilePath& path, std::size_t i, std::size_t j) {
  PumpVerdict v;
  v.bound = pump_bound(path, i, j);
  auto r = pump_k(path, i, j, v.bound);
  if (auto* b = std::get_if<Blocked>(&r)) v.blocked = *b;
  return v;
}

std::optional<Repetition> find_pumpable(const TilePath& path) {
  for (const auto& rep : repetitions(path)) {
    if (is_pumpable(path, rep.i, rep.j).pumpable()) return rep;
  }
  return std::nullopt;
}

PumpScanReport pumpability_scan(const TileAssemblySystem& system, std::size_t max_len,
                                std::size_t example_cap) {
  require_temperature_one(system);
  PumpScanReport report;
  report.max_len_scanned = max_len;
  report.tile_count = system.tiles().size();
  bool any_unpumped = false;
  std::size_t longest_unpumped = 0;

  for_each_producible_path(system, max_len, [&](const TilePath& path) {
    ++report.paths_scanned;
    const std::size_t length = path.size() - 1;
    if (path.size() > report.tile_count) report.pigeonhole_reached = true;

    bool pumpable = false;
    for (const auto& rep : repetitions(path)) {
      // a verdict depends only on path[0..j]; blocked ones are counted on the path ending at j
      if (rep.j + 1 == path.size()) {
        auto v = is_pumpable(path, rep.i, rep.j);
        if (v.pumpable()) {
          pumpable = true;
        } else {
          ++report.blocked_count;
          if (report.blocked_examples.size() < example_cap) {
            report.blocked_examples.push_back({path, rep, *v.blocked});
          }
        }
      } else if (!pumpable && is_pumpable(path, rep.i, rep.j).pumpable()) {
        pumpable = true;
      }
    }

    if (!pumpable) {
      any_unpumped = true;
      longest_unpumped = std::max(longest_unpumped, length);
      if (path.size() > report.tile_count) {
        ++report.violation_count;
        if (report.violations.size() < example_cap) report.violations.push_back(path);
      }
    }
    return true;
  });

  if (!any_unpumped) {
    report.c_estimate = 0;
  } else if (longest_unpumped < max_len) {
    report.c_estimate = longest_unpumped + 1;
  }
  return report;
}

}  // namespace tamlab
