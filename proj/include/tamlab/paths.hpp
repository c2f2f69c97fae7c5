#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "tamlab/model.hpp"

namespace tamlab {

/// Simple sequence of cardinally adjacent placements, each bound to its predecessor.
/// Length counts steps, so a path of length L holds L + 1 placements.
using TilePath = std::vector<Placement>;

/// Positions pairwise distinct, consecutive positions adjacent, consecutive tiles bound
/// with strength >= 1.
bool is_valid_path(const TileAssemblySystem& system, const TilePath& path);

/// Depth-first over every path of length <= max_len that starts at a seed placement and
/// grows by temperature-1 attachments at its head. Seed positions other than the start
/// count as occupied. `visit` returns false to stop. Throws WrongTemperature unless the
/// system runs at temperature 1.
void for_each_producible_path(const TileAssemblySystem& system, std::size_t max_len,
                              const std::function<bool(const TilePath&)>& visit);

std::vector<TilePath> producible_paths(const TileAssemblySystem& system, std::size_t max_len);

struct Repetition {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const Repetition&, const Repetition&) = default;
};

/// Index pairs i < j carrying the same tile type, ordered by (j - i, i).
std::vector<Repetition> repetitions(const TilePath& path);

/// Pumping stopped by copy `copy_index` (1-based) landing on `collision`.
struct Blocked {
  std::size_t copy_index = 0;
  Vec2 collision;
  friend bool operator==(const Blocked&, const Blocked&) = default;
};

/// path[0..j] followed by k more periods: copies of path(i..j] shifted by d, 2d, ..., kd
/// where d = p_j - p_i. Blocked at the first copy that revisits a laid position.
/// Throws InvalidRepetition if (i, j) is not a repetition of the path.
std::variant<TilePath, Blocked> pump_k(const TilePath& path, std::size_t i, std::size_t j,
                                       std::size_t k);

/// Number of copies that settles infinite pumping of (i, j): with D the Chebyshev
/// diameter of path[i..j) and P that of path[0..j), K = ceil((D + P) / |d|) + 1.
std::size_t pump_bound(const TilePath& path, std::size_t i, std::size_t j);

struct PumpVerdict {
  std::optional<Blocked> blocked;
  std::size_t bound = 0;  // copies checked

  bool pumpable() const { return !blocked.has_value(); }
};

PumpVerdict is_pumpable(const TilePath& path, std::size_t i, std::size_t j);

/// First repetition, in repetitions() order, that pumps forever.
std::optional<Repetition> find_pumpable(const TilePath& path);

struct BlockedExample {
  TilePath path;
  Repetition repetition;
  Blocked blocked;
};

struct PumpScanReport {
  std::size_t max_len_scanned = 0;
  std::size_t paths_scanned = 0;
  std::size_t tile_count = 0;
  /// Least L such that every scanned path of length >= L has a pumpable repetition;
  /// empty when even paths of the maximal scanned length lack one.
  std::optional<std::size_t> c_estimate;
  /// Some scanned path has more placements than there are tile types.
  bool pigeonhole_reached = false;
  /// Paths with more placements than tile types and no pumpable repetition.
  std::vector<TilePath> violations;
  std::size_t violation_count = 0;
  /// Blocked repetitions, each reported once on the path that ends at its j.
  std::vector<BlockedExample> blocked_examples;
  std::size_t blocked_count = 0;
};

/// Runs find_pumpable on every producible path up to max_len. At most `example_cap`
/// violations and blocked examples are stored; the counts are exact.
PumpScanReport pumpability_scan(const TileAssemblySystem& system, std::size_t max_len,
                                std::size_t example_cap = 32);

}  // namespace tamlab
