#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tamlab/errors.hpp"

using namespace support;

namespace {

// Minimum over all nontrivial 2-partitions of the strength across the cut.
int brute_min_cut(const TileSet& tiles, const Assembly& a) {
  std::vector<Placement> cells = a.placements();
  const std::size_t n = cells.size();
  int best = std::numeric_limits<int>::max();
  // fix cell 0 on side 0 so each partition is counted once
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    auto side = [&](std::size_t k) { return k == 0 ? 0u : (mask >> (k - 1)) & 1u; };
    bool both = false;
    for (std::size_t k = 1; k < n; ++k) both |= side(k) == 1;
    if (!both) continue;
    int cut = 0;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (side(x) != 0 || side(y) != 1) continue;
        Direction d;
        if (direction_between(cells[x].pos, cells[y].pos, d)) {
          cut += interaction_strength(tiles.at(cells[x].tile), tiles.at(cells[y].tile), d);
        }
      }
    }
    best = std::min(best, cut);
  }
  return best;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("interaction strength needs equal label and strength") {
  TileType a = tile("a", {}, g("g", 1));
  CHECK(interaction_strength(a, tile("b", {}, {}, {}, g("g", 1)), Direction::East) == 1);
  CHECK(interaction_strength(a, tile("b", {}, {}, {}, g("h", 1)), Direction::East) == 0);
  CHECK(interaction_strength(a, tile("b", {}, {}, {}, g("g", 2)), Direction::East) == 0);
  // wrong direction: a's west side is NULL
  CHECK(interaction_strength(a, tile("b", {}, {}, {}, g("g", 1)), Direction::West) == 0);
}

TEST_CASE("attach strength sums occupied neighbours") {
  TileSet tiles({tile("s", g("n", 1), g("e", 2)), tile("x", {}, {}, g("n", 1), g("e", 2)),
                 tile("y", {}, {}, {}, g("e", 1))});
  Assembly empty;
  CHECK(attach_strength(tiles, empty, {0, 0}, 1) == 0);
  Assembly a = single({0, 0}, 0);
  CHECK(attach_strength(tiles, a, {1, 0}, 1) == 2);
  CHECK(attach_strength(tiles, a, {1, 0}, 2) == 0);
  CHECK_THROWS_AS(attach_strength(tiles, a, {0, 0}, 1), OccupiedPosition);

  // two strength-1 neighbours
  TileSet coop({tile("w", {}, g("p", 1)), tile("s", g("q", 1)), tile("c", {}, {}, g("q", 1), g("p", 1))});
  Assembly b;
  b.place({0, 1}, 0);
  b.place({1, 0}, 1);
  CHECK(attach_strength(coop, b, {1, 1}, 2) == 2);
}

TEST_CASE("temperature gates attachment") {
  TileSet tiles({tile("w", {}, g("p", 1)), tile("s", g("q", 1)),
                 tile("c", {}, {}, g("q", 1), g("p", 1)), tile("seed", {}, {}, {}, {})});
  Assembly one;
  one.place({0, 1}, 0);
  Assembly two = one;
  two.place({1, 0}, 1);
  // a single strength-1 bond is not enough at temperature 2
  CHECK(attach_strength(tiles, one, {1, 1}, 2) < 2);
  CHECK(attach_strength(tiles, two, {1, 1}, 2) >= 2);
  TileAssemblySystem t1(tiles, single({0, 1}, 0), 1);
  CHECK(t1.can_attach(one, {1, 1}, 2));
  CHECK_THROWS_AS(t1.can_attach(one, {1, 1}, 99), UnknownTileType);
}

TEST_CASE("stability examples") {
  TileSet tiles({tile("a", {}, g("g", 1)), tile("b", {}, {}, {}, g("g", 1))});
  CHECK(is_tau_stable(tiles, single({0, 0}, 0), 2));
  Assembly pair;
  pair.place({0, 0}, 0);
  pair.place({1, 0}, 1);
  CHECK(is_tau_stable(tiles, pair, 1));
  CHECK_FALSE(is_tau_stable(tiles, pair, 2));
  Assembly apart;
  apart.place({0, 0}, 0);
  apart.place({3, 0}, 1);
  CHECK_FALSE(is_tau_stable(tiles, apart, 1));
}

TEST_CASE("stability agrees with brute-force cuts on random assemblies") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(2, 9);
  std::uniform_int_distribution<int> step(0, 3);
  int stable_seen = 0, unstable_seen = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    // one label, mostly non-NULL sides: bonds are common but strengths vary
    TileSet tiles;
    for (int k = 0; k < 4; ++k) {
      TileType t{"t" + std::to_string(k), {}, false};
      for (auto& side : t.sides) {
        if (std::bernoulli_distribution(0.85)(rng)) side = g("a", std::uniform_int_distribution<int>(1, 2)(rng));
      }
      tiles.add(t);
    }
    std::uniform_int_distribution<TileId> pick(0, static_cast<TileId>(tiles.size() - 1));
    // random connected shape grown from the origin
    Assembly a;
    a.place({0, 0}, pick(rng));
    const int n = size(rng);
    while (static_cast<int>(a.size()) < n) {
      auto cells = a.placements();
      Vec2 from = cells[std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng)].pos;
      Vec2 to = from + offset(kDirections[step(rng)]);
      if (!a.occupied(to)) a.place(to, pick(rng));
    }
    for (int tau : {1, 2, 3}) {
      bool expected = brute_min_cut(tiles, a) >= tau;
      CHECK(is_tau_stable(tiles, a, tau) == expected);
      (expected ? stable_seen : unstable_seen)++;
    }
  }
  CHECK(stable_seen > 50);
  CHECK(unstable_seen > 100);
}

TEST_CASE("tile set and system validation") {
  TileSet tiles;
  tiles.add(tile("a"));
  CHECK_THROWS_AS(tiles.add(tile("a")), InvalidSystem);
  CHECK_THROWS_AS(tiles.add(tile("z", Glue{"", 1})), InvalidSystem);

  TileSet pair({tile("a", {}, g("g", 1)), tile("b", {}, {}, {}, g("g", 1))});
  CHECK_THROWS_AS(TileAssemblySystem(pair, single({0, 0}, 0), 0), InvalidSystem);
  CHECK_THROWS_AS(TileAssemblySystem(pair, Assembly{}, 1), InvalidSystem);
  CHECK_THROWS_AS(TileAssemblySystem(pair, single({0, 0}, 5), 1), InvalidSystem);
  Assembly apart;
  apart.place({0, 0}, 0);
  apart.place({2, 0}, 1);
  CHECK_THROWS_AS(TileAssemblySystem(pair, apart, 1), InvalidSystem);
  Assembly weak;
  weak.place({0, 0}, 0);
  weak.place({1, 0}, 1);
  CHECK_NOTHROW(TileAssemblySystem(pair, weak, 1));
  CHECK_THROWS_AS(TileAssemblySystem(pair, weak, 2), InvalidSystem);
}

TEST_CASE("assembly placement") {
  Assembly a;
  a.place({1, 2}, 0);
  CHECK_THROWS_AS(a.place({1, 2}, 1), OccupiedPosition);
  a.place({0, 5}, 1);
  auto pl = a.placements();
  REQUIRE(pl.size() == 2);
  CHECK(pl[0].pos == Vec2{0, 5});
}

}
