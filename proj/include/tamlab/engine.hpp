#pragma once

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tamlab/model.hpp"

namespace tamlab {

/// Attachable (position, tile) pairs, sorted. A position may appear with several tiles.
using Frontier = std::vector<Placement>;

/// Finite lattice point set, ordered by (x, y).
using PointSet = std::set<Vec2>;

Frontier frontier(const TileAssemblySystem& system, const Assembly& assembly);

/// Returns assembly + {p -> t}; the input is untouched. Throws IllegalAttachment unless
/// (p, t) is in the frontier.
Assembly attach(const TileAssemblySystem& system, const Assembly& assembly, Vec2 p, TileId t);

/// Candidate order used by run_to_quiescence: lexicographic on (y, x, tile name),
/// least first, or greatest first when reversed.
enum class TieBreak { LeastFirst, GreatestFirst };

struct RunResult {
  Assembly assembly;
  bool exhausted = false;  // budget hit while in-window candidates remained
  std::size_t steps = 0;
};

/// Grows from the seed inside `window`, one attachment per step, until nothing in the
/// window can attach or `step_budget` attachments have been made.
/// Throws SeedOutsideWindow.
RunResult run_to_quiescence(const TileAssemblySystem& system, const Window& window,
                            std::size_t step_budget, TieBreak order = TieBreak::LeastFirst);

/// Positions holding black tile types.
PointSet black_set(const TileSet& tiles, const Assembly& assembly);

/// Calls `visit` once for every producible assembly inside `window` with at most
/// `max_size` tiles (breadth first, so by size). `visit` returns false to stop early.
/// Throws BudgetExceeded when the deduplication table would exceed `table_cap`.
void for_each_producible(const TileAssemblySystem& system, const Window& window,
                         std::size_t max_size, std::size_t table_cap,
                         const std::function<bool(const Assembly&)>& visit);

std::vector<Assembly> enumerate_producible(const TileAssemblySystem& system,
                                           const Window& window, std::size_t max_size,
                                           std::size_t table_cap = 1'000'000);

// ---------------------------------------------------------------------------
// Directedness

/// Attachments applied after the seed, in order.
using Trace = std::vector<Placement>;

struct Directed {};

/// Two producible assemblies disagreeing at `pos`. An empty trace means the seed itself
/// holds that tile.
struct ConflictWitness {
  Vec2 pos;
  TileId tile_a = 0;
  TileId tile_b = 0;
  Trace trace_a;
  Trace trace_b;
};

struct Inconclusive {
  std::string reason;
};

struct DirectednessVerdict {
  std::variant<Directed, ConflictWitness, Inconclusive> outcome;
  /// "fixed-point", "path-search", "terminal-closure" or "exhaustive": the stage that
  /// settled the verdict.
  std::string method;
  /// Work units spent against the budget.
  std::size_t work = 0;

  bool directed() const { return std::holds_alternative<Directed>(outcome); }
  const ConflictWitness* conflict() const { return std::get_if<ConflictWitness>(&outcome); }
  const Inconclusive* inconclusive() const { return std::get_if<Inconclusive>(&outcome); }
};

struct DirectedOptions {
  /// Skip the fixed-point shortcut and decide by exhaustive enumeration.
  bool force_exhaustive = false;
};

/// Windowed directedness: does any position inside `window` receive two different tile
/// types across producible assemblies? A conflict-free reachability fixed point answers
/// Directed at once. Otherwise temperature 1 decides by simple-path search, and higher
/// temperatures by testing, for each position of one terminal assembly A, whether a
/// different tile fits the largest producible sub-assembly of A avoiding it. `budget`
/// bounds total work; running out yields Inconclusive.
DirectednessVerdict check_directed(const TileAssemblySystem& system, const Window& window,
                                   std::size_t budget, DirectedOptions options = {});

/// Replays a trace on top of the seed through `attach`.
Assembly replay(const TileAssemblySystem& system, const Trace& trace);

}  // namespace tamlab
