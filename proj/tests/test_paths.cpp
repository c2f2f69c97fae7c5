#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tamlab/engine.hpp"
#include "tamlab/errors.hpp"
#include "tamlab/paths.hpp"

using namespace support;

namespace {

TilePath make_path(std::initializer_list<std::pair<Vec2, TileId>> cells) {
  TilePath p;
  for (const auto& [pos, t] : cells) p.push_back({pos, t});
  return p;
}

// Path with tile ids taken from a tile-name string, walking the given moves from (0,0).
TilePath walk(const std::string& moves, const std::vector<TileId>& tiles) {
  TilePath p{{{0, 0}, tiles.at(0)}};
  for (std::size_t k = 0; k < moves.size(); ++k) {
    Direction d = moves[k] == 'E' ? Direction::East
                : moves[k] == 'W' ? Direction::West
                : moves[k] == 'N' ? Direction::North
                                  : Direction::South;
    p.push_back({p.back().pos + offset(d), tiles.at(k + 1)});
  }
  return p;
}

bool simple(const TilePath& p) {
  std::set<Vec2> seen;
  for (const auto& pl : p) {
    if (!seen.insert(pl.pos).second) return false;
  }
  return true;
}

// Oracle for infinite pumping: lay many more periods than any bound could need.
bool pumps_far(const TilePath& p, std::size_t i, std::size_t j) {
  return std::holds_alternative<TilePath>(pump_k(p, i, j, 4 * p.size() + 8));
}

}  // namespace

TEST_SUITE("paths") {

TEST_CASE("producible paths") {
  auto still = load("no_growth.tas");
  auto only = producible_paths(still, 10);
  REQUIRE(only.size() == 1);
  CHECK(only[0].size() == 1);

  auto row = load("row.tas");
  auto paths = producible_paths(row, 4);
  REQUIRE(paths.size() == 5);
  std::set<std::size_t> lengths;
  for (const auto& p : paths) lengths.insert(p.size() - 1);
  CHECK(lengths == std::set<std::size_t>{0, 1, 2, 3, 4});

  CHECK_THROWS_AS(producible_paths(load("sierpinski.tas"), 3), WrongTemperature);
}

TEST_CASE("blocked spiral produces a self-approaching path") {
  auto sys = load("blocked_spiral.tas");
  const TileId D = *sys.tiles().find("D");
  bool found = false;
  for_each_producible_path(sys, 40, [&](const TilePath& p) {
    CHECK(is_valid_path(sys, p));
    // replaying a path through the engine must succeed
    Assembly a = sys.seed();
    for (std::size_t k = 1; k < p.size(); ++k) a = attach(sys, a, p[k].pos, p[k].tile);
    if (p.back().tile == D && p.back().pos.y == 1 && p.back().pos.x >= 0) {
      found = true;
      // the next step down would land on the path's own row
      Vec2 below = p.back().pos + offset(Direction::South);
      CHECK(std::any_of(p.begin(), p.end(), [&](const Placement& q) { return q.pos == below; }));
    }
    return true;
  });
  CHECK(found);
}

TEST_CASE("repetitions") {
  CHECK(repetitions(walk("EE", {0, 1, 2})).empty());
  CHECK(repetitions(walk("EE", {0, 1, 0})) == std::vector<Repetition>{{0, 2}});
  auto reps = repetitions(walk("EEE", {0, 0, 0, 0}));
  CHECK(reps == std::vector<Repetition>{{0, 1}, {1, 2}, {2, 3}, {0, 2}, {1, 3}, {0, 3}});
  // pigeonhole
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<TileId> ids(6);
    for (auto& t : ids) t = std::uniform_int_distribution<TileId>(0, 4)(rng);
    CHECK_FALSE(repetitions(walk("EEEEE", ids)).empty());
  }
}

TEST_CASE("pump_k") {
  auto line = make_path({{{0, 0}, 0}, {{1, 0}, 0}});
  auto r = pump_k(line, 0, 1, 3);
  REQUIRE(std::holds_alternative<TilePath>(r));
  auto out = std::get<TilePath>(r);
  REQUIRE(out.size() == 5);
  for (Coord x = 0; x <= 4; ++x) CHECK(out[static_cast<std::size_t>(x)].pos == Vec2{x, 0});

  // runs away first, then steps back: copy 1 lands on the path's own (3,1)
  auto hook = walk("NNEEESW", {9, 8, 7, 6, 0, 5, 4, 0});
  auto blocked = pump_k(hook, 4, 7, 5);
  REQUIRE(std::holds_alternative<Blocked>(blocked));
  CHECK(std::get<Blocked>(blocked) == Blocked{1, {3, 1}});

  CHECK_THROWS_AS(pump_k(line, 1, 0, 1), InvalidRepetition);
  CHECK_THROWS_AS(pump_k(make_path({{{0, 0}, 0}, {{1, 0}, 1}}), 0, 1, 1), InvalidRepetition);
}

TEST_CASE("constructed L-shape is blocked by the second copy") {
  // east along y = 0, up x = 4, back west to (2,5) and down: d = (0,-2), so copy 1
  // covers (2,2),(2,1) and copy 2 reaches (2,0) on the prefix
  std::vector<TileId> ids{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 21, 20};
  auto p = walk("EEEENNNNNWWSS", ids);
  REQUIRE(simple(p));
  REQUIRE(p[11].pos == Vec2{2, 5});
  REQUIRE(p[13].pos == Vec2{2, 3});
  CHECK(std::holds_alternative<TilePath>(pump_k(p, 11, 13, 1)));
  auto r = pump_k(p, 11, 13, 3);
  REQUIRE(std::holds_alternative<Blocked>(r));
  CHECK(std::get<Blocked>(r) == Blocked{2, {2, 0}});
}

TEST_CASE("is_pumpable examples") {
  CHECK(is_pumpable(walk("EEEE", {0, 1, 0, 1, 0}), 0, 2).pumpable());
  // 6-step hook: east, north, back west and down toward the start row
  auto hook = walk("EENNWS", {1, 2, 3, 4, 5, 0, 0});
  auto v = is_pumpable(hook, 5, 6);
  REQUIRE_FALSE(v.pumpable());
  CHECK(*v.blocked == Blocked{1, {1, 0}});
  // an arch: the next copy's first leg is this copy's last leg
  auto arch = walk("NNEESS", {0, 1, 2, 3, 4, 5, 0});
  CHECK(*is_pumpable(arch, 0, 6).blocked == Blocked{1, {2, 1}});
  auto stairs = walk("NENEN", {0, 1, 2, 0, 1, 2});
  CHECK(is_pumpable(stairs, 0, 3).pumpable());
  CHECK(pumps_far(stairs, 0, 3));
}

TEST_CASE("find_pumpable") {
  CHECK_FALSE(find_pumpable(walk("EE", {0, 1, 2})));
  CHECK(find_pumpable(walk("EEE", {0, 0, 0, 0})) == Repetition{0, 1});
}

TEST_CASE("blocked spiral: latest repetition blocked, earlier run pumpable") {
  auto sys = load("blocked_spiral.tas");
  const TileId D = *sys.tiles().find("D");
  const TileId E = *sys.tiles().find("E");
  auto scan = pumpability_scan(sys, 40);
  CHECK(scan.violation_count == 0);
  CHECK(scan.blocked_count > 0);
  REQUIRE(scan.c_estimate);
  int checked = 0;
  for_each_producible_path(sys, 40, [&](const TilePath& p) {
    if (p.size() - 1 >= *scan.c_estimate) CHECK(find_pumpable(p));
    if (p.size() >= 3 && p.back().tile == D && p[p.size() - 2].tile == D && p[2].tile == E &&
        p.back().pos.x >= 0) {
      auto blocked = is_pumpable(p, p.size() - 2, p.size() - 1);
      CHECK_FALSE(blocked.pumpable());
      CHECK(blocked.blocked->copy_index <= 2);
      CHECK(is_pumpable(p, 1, 2).pumpable());
      auto first = find_pumpable(p);
      REQUIRE(first);
      CHECK(first->j < p.size() - 1);
      ++checked;
    }
    return true;
  });
  CHECK(checked > 10);
}

TEST_CASE("scan reports") {
  auto row = pumpability_scan(load("row.tas"), 10);
  CHECK(row.c_estimate == std::optional<std::size_t>{2});
  CHECK(row.violations.empty());

  TileSet distinct({tile("s", {}, g("a", 1)), tile("x", {}, g("b", 1), {}, g("a", 1)),
                    tile("y", {}, {}, {}, g("b", 1))});
  auto sys = TileAssemblySystem(distinct, single({0, 0}, 0), 1);
  auto r = pumpability_scan(sys, 10);
  CHECK_FALSE(r.pigeonhole_reached);
  CHECK(r.violations.empty());
  CHECK(r.paths_scanned == 3);
}

TEST_CASE("bound soundness on random walks") {
  std::mt19937_64 rng(5);
  const std::string dirs = "NESW";
  int pumpable = 0, blocked = 0;
  while (pumpable < 500 || blocked < 200) {
    // random self-avoiding walk over 3 tile types
    std::size_t len = std::uniform_int_distribution<std::size_t>(3, 14)(rng);
    std::string moves;
    TilePath p{{{0, 0}, 0}};
    std::set<Vec2> used{{0, 0}};
    for (std::size_t k = 0; k < len; ++k) {
      std::vector<Direction> free;
      for (Direction d : kDirections) {
        if (!used.count(p.back().pos + offset(d))) free.push_back(d);
      }
      if (free.empty()) break;
      Direction d = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
      Vec2 q = p.back().pos + offset(d);
      used.insert(q);
      p.push_back({q, std::uniform_int_distribution<TileId>(0, 2)(rng)});
    }
    for (const auto& rep : repetitions(p)) {
      auto v = is_pumpable(p, rep.i, rep.j);
      CHECK(v.pumpable() == pumps_far(p, rep.i, rep.j));
      if (v.pumpable()) {
        ++pumpable;
        for (std::size_t k = v.bound + 1; k <= v.bound + 5; ++k) {
          auto r = pump_k(p, rep.i, rep.j, k);
          REQUIRE(std::holds_alternative<TilePath>(r));
          CHECK(simple(std::get<TilePath>(r)));
        }
      } else {
        ++blocked;
        auto again = pump_k(p, rep.i, rep.j, v.blocked->copy_index);
        REQUIRE(std::holds_alternative<Blocked>(again));
        CHECK(std::get<Blocked>(again) == *v.blocked);
        if (v.blocked->copy_index > 1) {
          CHECK(std::holds_alternative<TilePath>(pump_k(p, rep.i, rep.j, v.blocked->copy_index - 1)));
        }
      }
    }
  }
}

}
