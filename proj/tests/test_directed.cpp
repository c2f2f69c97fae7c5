#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "support.hpp"
#include "tamlab/engine.hpp"
#include "tamlab/errors.hpp"

using namespace support;

namespace {

// Independent oracle: depth-first over every producible assembly in w, tracking the tiles
// each position ever receives. Returns nullopt when the state count passes `cap`.
std::optional<bool> brute_directed(const TileAssemblySystem& sys, const Window& w, std::size_t cap) {
  std::set<std::vector<Placement>> seen;
  std::map<Vec2, std::set<TileId>> tiles_at;
  const auto n = static_cast<TileId>(sys.tiles().size());
  bool overflow = false;
  std::function<void(const Assembly&)> dfs = [&](const Assembly& a) {
    if (overflow) return;
    if (!seen.insert(a.placements()).second) return;
    if (seen.size() > cap) {
      overflow = true;
      return;
    }
    for (const auto& [p, t] : a) tiles_at[p].insert(t);
    for (Coord x = w.x_min; x <= w.x_max; ++x) {
      for (Coord y = w.y_min; y <= w.y_max; ++y) {
        if (a.occupied({x, y})) continue;
        for (TileId t = 0; t < n; ++t) {
          int total = 0;
          for (Direction d : kDirections) {
            if (auto nb = a.at(Vec2{x, y} + offset(d))) {
              total += interaction_strength(sys.tiles().at(t), sys.tiles().at(*nb), d);
            }
          }
          if (total >= sys.temperature()) {
            Assembly next = a;
            next.place({x, y}, t);
            dfs(next);
          }
        }
      }
    }
  };
  dfs(sys.seed());
  if (overflow) return std::nullopt;
  for (const auto& [p, ts] : tiles_at) {
    if (ts.size() > 1) return false;
  }
  return true;
}

void check_witness(const TileAssemblySystem& sys, const ConflictWitness& c) {
  Assembly a = replay(sys, c.trace_a);
  Assembly b = replay(sys, c.trace_b);
  REQUIRE(a.at(c.pos).has_value());
  REQUIRE(b.at(c.pos).has_value());
  CHECK(*a.at(c.pos) == c.tile_a);
  CHECK(*b.at(c.pos) == c.tile_b);
  CHECK(c.tile_a != c.tile_b);
}

}  // namespace

TEST_SUITE("directed") {

TEST_CASE("fixtures") {
  auto row = load("row.tas");
  auto v = check_directed(row, Window::make(0, 0, 20, 0), 100000);
  CHECK(v.directed());

  auto choice = load("two_choice.tas");
  auto c = check_directed(choice, Window::square(4), 100000);
  REQUIRE(c.conflict());
  CHECK(c.conflict()->pos == Vec2{1, 0});
  std::set<std::string> names{choice.tiles().at(c.conflict()->tile_a).name,
                              choice.tiles().at(c.conflict()->tile_b).name};
  CHECK(names == std::set<std::string>{"A", "B"});
  check_witness(choice, *c.conflict());

  auto sier = load("sierpinski.tas");
  CHECK(check_directed(sier, Window::square(16), 10'000'000).directed());

  auto huge = check_directed(row, Window::make(0, 0, 1'000'000, 1'000'000), 50);
  CHECK(huge.inconclusive());
}

TEST_CASE("exhaustive mode agrees on small sierpinski windows") {
  auto sier = load("sierpinski.tas");
  auto v = check_directed(sier, Window::square(4), 10'000'000, DirectedOptions{true});
  CHECK(v.directed());
  CHECK(v.method == "exhaustive");
}

TEST_CASE("verdicts agree with brute force on random small systems") {
  std::mt19937_64 rng(11);
  const Window w = Window::make(-1, -1, 1, 1);
  int compared = 0, conflicts = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int tau = trial % 2 == 0 ? 1 : 2;
    TileSet tiles = random_tiles(rng, 3, 2);
    TileId seed_tile = std::uniform_int_distribution<TileId>(0, 2)(rng);
    TileAssemblySystem sys(tiles, single({0, 0}, seed_tile), tau);
    auto expected = brute_directed(sys, w, 20000);
    if (!expected) continue;
    ++compared;
    for (bool force : {false, true}) {
      auto v = check_directed(sys, w, 50'000'000, DirectedOptions{force});
      REQUIRE_FALSE(v.inconclusive());
      CHECK(v.directed() == *expected);
      if (auto* c = v.conflict()) {
        ++conflicts;
        check_witness(sys, *c);
      }
    }
  }
  CHECK(compared > 300);
  CHECK(conflicts > 50);
}

}
