#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tamlab/engine.hpp"
#include "tamlab/geometry.hpp"

namespace tamlab {

/// {base + n*u + m*v : n, m >= 0}. u = v = 0 is the singleton {base}.
struct SdpSet {
  Vec2 base;
  Vec2 u;
  Vec2 v;

  friend auto operator<=>(const SdpSet&, const SdpSet&) = default;
};

/// Finite union of semi-doubly periodic sets; the empty union is the empty set.
struct SdpUnion {
  std::vector<SdpSet> parts;

  /// Same set, parts sorted with exact duplicates removed.
  SdpUnion deduplicated() const;
  friend bool operator==(const SdpUnion&, const SdpUnion&) = default;
};

std::string to_string(const SdpSet& part);

/// Does n*a + m*c = t have a solution with n, m >= 0? Exact for every sign pattern.
bool representable(Coord a, Coord c, Coord t);

bool contains_sdp(const SdpSet& part, Vec2 p);
bool contains_union(const SdpUnion& set, Vec2 p);

inline constexpr std::size_t kDefaultGenerationCap = std::size_t{1} << 24;

/// Calls fn once for every point of part inside w. Independent periods are generated
/// forward over (n, m); parallel ones walk the common line and test each step.
/// Throws DegenerateRange if the number of generation steps would exceed `cap`.
void for_each_window_point(const SdpSet& part, const Window& w,
                           const std::function<void(Vec2)>& fn,
                           std::size_t cap = kDefaultGenerationCap);

PointSet window_points(const SdpSet& part, const Window& w,
                       std::size_t cap = kDefaultGenerationCap);
PointSet window_points(const SdpUnion& set, const Window& w,
                       std::size_t cap = kDefaultGenerationCap);

/// Least point (x, then y) of w where the two unions disagree; empty when they agree.
std::optional<Vec2> equal_on_window(const SdpUnion& a, const SdpUnion& b, const Window& w);

/// Row indicator as a unary automaton: `preperiod` transient states then a cycle of
/// length `period`, read eastward from `left_bound`.
struct EventuallyPeriodicRow {
  Coord y = 0;
  Coord left_bound = 0;
  std::size_t preperiod = 0;
  std::size_t period = 1;
  std::vector<bool> prefix_members;
  std::vector<bool> cycle_members;

  /// Membership for x >= left_bound.
  bool member(Coord x) const;
};

/// Throws ProbeTooNarrow if no description with period <= probe_width / 3 fits the probe
/// and survives three further periods.
EventuallyPeriodicRow row_slice(const SdpUnion& set, Coord y, Coord left_bound,
                                std::size_t probe_width);

struct FitOptions {
  std::size_t max_parts = 1;  // K
  Coord max_coord = 1;        // B, bound on |u| and |v| (Chebyshev)
  /// Distinct candidate parts materialised for the backtracking search.
  std::size_t candidate_cap = 400'000;
  /// Backtracking nodes.
  std::size_t node_cap = 5'000'000;
};

struct FitResult {
  std::optional<SdpUnion> fit;
  /// "greedy", "backtracking" or "bound" (no K parts can cover the sample).
  std::string strategy;
  /// True when the bounded space was searched completely (always true when fit is empty).
  bool exhaustive = false;
  /// Candidate parts evaluated by greedy, or distinct ones materialised for backtracking.
  std::size_t candidates = 0;
  std::size_t nodes = 0;
  /// Largest number of sample points any single candidate covers.
  std::size_t best_single_cover = 0;
  /// Greedy's best attempt, useful as a nearest miss when no fit exists.
  SdpUnion greedy_parts;
  std::vector<Vec2> greedy_uncovered;
};

/// Searches unions of at most K parts, with periods bounded by B and base points drawn
/// from the sample, whose points inside w are exactly the sample. Candidates are parts
/// contained in the sample; greedy max-cover runs first, then an exhaustive branch and
/// bound. Throws SearchSpaceExceeded when the caps are hit before the search completes.
FitResult fit_union_detailed(const PointSet& sample, const Window& w, const FitOptions& options);

std::optional<SdpUnion> fit_union(const PointSet& sample, const Window& w, std::size_t max_parts,
                                  Coord max_coord);

struct PredictionResult {
  bool ok = false;
  std::optional<Vec2> mismatch;
};

/// Compares window_points(set, w2) with the observed points inside w2.
/// Throws WindowNotNested unless w lies inside w2.
PredictionResult predictive_check(const SdpUnion& set, const PointSet& observed,
                                  const Window& w, const Window& w2);

}  // namespace tamlab
