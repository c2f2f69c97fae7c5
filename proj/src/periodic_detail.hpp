#pragma once

// Lattice helpers shared by the periodic-set algebra and the fitter.

#include "tamlab/periodic.hpp"

namespace tamlab::detail {

Coord floor_div(Coord a, Coord b);
Coord ceil_div(Coord a, Coord b);

struct Interval {
  Coord lo;
  Coord hi;
  bool empty() const { return lo > hi; }
};

/// Integers k >= lower with p + k*v inside w. v must be nonzero.
Interval step_interval(Vec2 p, Vec2 v, const Window& w, Coord lower);

/// v divided by gcd of its coordinates; v nonzero.
Vec2 primitive(Vec2 v);

/// k with v = k*g, for v parallel to the primitive g.
Coord coefficient(Vec2 v, Vec2 g);

/// Largest n such that base + n*u + m*v can land in w, for independent u, v.
Coord cone_n_max(const SdpSet& part, const Window& w);

}  // namespace tamlab::detail
