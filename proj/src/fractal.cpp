#include "tamlab/fractal.hpp"

#include <algorithm>
#include <stdexcept>

#include "tamlab/errors.hpp"

namespace tamlab {

FractalSpec FractalSpec::sierpinski() { return {2, {{0, 0}, {1, 0}, {0, 1}}}; }

namespace {

void validate(const FractalSpec& spec) {
  if (spec.base < 2) throw std::invalid_argument("fractal base must be >= 2");
  for (Vec2 g : spec.generator) {
    if (g.x < 0 || g.y < 0 || g.x >= spec.base || g.y >= spec.base) {
      throw std::invalid_argument("generator digit pair " + to_string(g) + " out of range");
    }
  }
}

}  // namespace

bool fractal_contains(const FractalSpec& spec, Vec2 p) {
  if (p.x < 0 || p.y < 0) return false;
  const Coord c = spec.base;
  for (Coord x = p.x, y = p.y; x != 0 || y != 0; x /= c, y /= c) {
    Vec2 digit{x % c, y % c};
    if (std::find(spec.generator.begin(), spec.generator.end(), digit) == spec.generator.end()) {
      return false;
    }
  }
  return true;
}

PointSet fractal_points(const FractalSpec& spec, const Window& w) {
  validate(spec);
  if (w.x_min < 0 || w.y_min < 0) {
    throw NegativeWindow("fractal windows must lie in the first quadrant, got " + to_string(w));
  }
  PointSet out;
  for (Coord x = w.x_min; x <= w.x_max; ++x) {
    for (Coord y = w.y_min; y <= w.y_max; ++y) {
      if (fractal_contains(spec, {x, y})) out.insert({x, y});
    }
  }
  return out;
}

bool is_nontrivial(const FractalSpec& spec) {
  validate(spec);
  std::vector<Vec2> g = spec.generator;
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  const auto full = static_cast<std::size_t>(spec.base) * static_cast<std::size_t>(spec.base);
  if (g.empty() || g.size() == full) return false;
  // every point is a sum of digit pairs scaled by powers of c, so the set is collinear
  // (through the origin) iff the nonzero digit pairs are
  std::vector<Vec2> nonzero;
  std::copy_if(g.begin(), g.end(), std::back_inserter(nonzero),
               [](Vec2 d) { return !d.is_zero(); });
  if (nonzero.empty()) return false;
  return std::any_of(nonzero.begin(), nonzero.end(),
                     [&](Vec2 d) { return cross(d, nonzero.front()) != 0; });
}

MismatchReport mismatch_witness(const FractalSpec& spec, const Window& w, std::size_t max_parts,
                                Coord max_coord) {
  if (!is_nontrivial(spec)) throw TrivialFractal("fractal spec is trivial");
  MismatchReport report;
  report.window = w;
  report.max_parts = max_parts;
  report.max_coord = max_coord;
  PointSet sample = fractal_points(spec, w);
  report.sample_size = sample.size();
  FitOptions options;
  options.max_parts = max_parts;
  options.max_coord = max_coord;
  report.search = fit_union_detailed(sample, w, options);
  report.fit_found = report.search.fit.has_value();
  report.exhaustive = report.search.exhaustive;
  report.fit = report.search.fit;
  report.nearest_miss = report.search.greedy_parts;
  report.nearest_miss_uncovered = report.search.greedy_uncovered;
  return report;
}

}  // namespace tamlab
