#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tamlab/engine.hpp"
#include "tamlab/periodic.hpp"

namespace tamlab {

/// Discrete self-similar set over N^2: (x, y) belongs iff every base-c digit pair of
/// (x, y), padded to the longer expansion, lies in the generator. (0, 0) always belongs.
struct FractalSpec {
  int base = 2;
  std::vector<Vec2> generator;

  /// Discrete Sierpinski triangle: base 2, generator {(0,0), (1,0), (0,1)}.
  static FractalSpec sierpinski();
};

bool fractal_contains(const FractalSpec& spec, Vec2 p);

/// Throws NegativeWindow if w reaches below 0 on either axis, std::invalid_argument if
/// the spec is malformed.
PointSet fractal_points(const FractalSpec& spec, const Window& w);

/// Working definition: the generator is a proper nonempty subset of {0..c-1}^2, the set
/// is infinite (some nonzero digit pair) and not contained in a single line.
bool is_nontrivial(const FractalSpec& spec);

struct MismatchReport {
  Window window;
  std::size_t max_parts = 0;
  Coord max_coord = 0;
  std::size_t sample_size = 0;
  bool fit_found = false;
  bool exhaustive = false;
  std::optional<SdpUnion> fit;
  /// Greedy's closest union and the sample points it leaves uncovered.
  SdpUnion nearest_miss;
  std::vector<Vec2> nearest_miss_uncovered;
  FitResult search;
};

/// Fits the fractal's points on w with at most K parts and periods bounded by B.
/// Throws TrivialFractal unless is_nontrivial(spec); SearchSpaceExceeded propagates.
MismatchReport mismatch_witness(const FractalSpec& spec, const Window& w, std::size_t max_parts,
                                Coord max_coord);

}  // namespace tamlab
