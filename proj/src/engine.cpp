#include "tamlab/engine.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "tamlab/errors.hpp"

namespace tamlab {

Frontier frontier(const TileAssemblySystem& system, const Assembly& assembly) {
  std::set<Vec2> empty_neighbours;
  for (const auto& [p, t] : assembly) {
    for (Direction d : kDirections) {
      Vec2 q = p + offset(d);
      if (!assembly.occupied(q)) empty_neighbours.insert(q);
    }
  }
  Frontier out;
  const auto n = static_cast<TileId>(system.tiles().size());
  for (Vec2 p : empty_neighbours) {
    for (TileId t = 0; t < n; ++t) {
      if (system.attach_strength(assembly, p, t) >= system.temperature()) out.push_back({p, t});
    }
  }
  return out;
}

Assembly attach(const TileAssemblySystem& system, const Assembly& assembly, Vec2 p, TileId t) {
  if (!system.tiles().contains(t)) {
    throw IllegalAttachment("tile id " + std::to_string(t) + " is not in the tile set");
  }
  if (assembly.occupied(p)) throw IllegalAttachment("position " + to_string(p) + " is occupied");
  if (system.attach_strength(assembly, p, t) < system.temperature()) {
    throw IllegalAttachment("tile '" + system.tiles()[t].name + "' cannot attach at " +
                            to_string(p));
  }
  Assembly out = assembly;
  out.place(p, t);
  return out;
}

RunResult run_to_quiescence(const TileAssemblySystem& system, const Window& window,
                            std::size_t step_budget, TieBreak order) {
  for (const auto& [p, t] : system.seed()) {
    if (!window.contains(p)) {
      throw SeedOutsideWindow("seed tile at " + to_string(p) + " lies outside " +
                              to_string(window));
    }
  }
  const TileSet& tiles = system.tiles();
  const auto n = static_cast<TileId>(tiles.size());

  // rank of each tile by name, for the (y, x, name) order
  std::vector<TileId> by_name(n);
  for (TileId t = 0; t < n; ++t) by_name[t] = t;
  std::sort(by_name.begin(), by_name.end(),
            [&](TileId a, TileId b) { return tiles[a].name < tiles[b].name; });
  std::vector<std::uint32_t> rank(n);
  for (std::uint32_t r = 0; r < n; ++r) rank[by_name[r]] = r;

  using Key = std::tuple<Coord, Coord, std::uint32_t>;  // y, x, name rank
  std::set<Key> candidates;

  RunResult result{system.seed(), false, 0};
  Assembly& a = result.assembly;

  auto refresh = [&](Vec2 p) {
    candidates.erase(candidates.lower_bound({p.y, p.x, 0}),
                     candidates.upper_bound({p.y, p.x, std::numeric_limits<std::uint32_t>::max()}));
    if (!window.contains(p) || a.occupied(p)) return;
    for (TileId t = 0; t < n; ++t) {
      if (system.attach_strength(a, p, t) >= system.temperature()) {
        candidates.insert({p.y, p.x, rank[t]});
      }
    }
  };

  for (const auto& [p, t] : system.seed()) {
    for (Direction d : kDirections) refresh(p + offset(d));
  }

  while (!candidates.empty() && result.steps < step_budget) {
    Key k = order == TieBreak::LeastFirst ? *candidates.begin() : *candidates.rbegin();
    Vec2 p{std::get<1>(k), std::get<0>(k)};
    a.place(p, by_name[std::get<2>(k)]);
    ++result.steps;
    refresh(p);
    for (Direction d : kDirections) refresh(p + offset(d));
  }
  result.exhausted = !candidates.empty();
  return result;
}

PointSet black_set(const TileSet& tiles, const Assembly& assembly) {
  PointSet out;
  for (const auto& [p, t] : assembly) {
    if (tiles.at(t).black) out.insert(p);
  }
  return out;
}

namespace {

struct PlacementHash {
  std::size_t operator()(const std::vector<Placement>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (const auto& pl : v) {
      h ^= Vec2Hash{}(pl.pos) + pl.tile;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

// Breadth-first exploration of producible assemblies with parent links, so that every
// visited assembly can be turned back into an attachment trace.
class Explorer {
 public:
  struct Node {
    std::size_t parent;
    Placement last;  // placement that produced this node from its parent
  };
  static constexpr std::size_t kRoot = std::numeric_limits<std::size_t>::max();

  // visit(node index, assembly) -> keep going?
  using Visit = std::function<bool(std::size_t, const Assembly&)>;

  Explorer(const TileAssemblySystem& system, const Window& window)
      : system_(system), window_(window) {}

  void run(std::size_t max_size, std::size_t table_cap, const Visit& visit) {
    std::deque<std::pair<std::size_t, Assembly>> queue;
    seen_.insert(system_.seed().placements());
    nodes_.push_back({kRoot, {}});
    if (!visit(0, system_.seed())) return;
    queue.emplace_back(0, system_.seed());
    while (!queue.empty()) {
      auto [idx, current] = std::move(queue.front());
      queue.pop_front();
      if (current.size() >= max_size) continue;
      for (const Placement& pl : frontier(system_, current)) {
        if (!window_.contains(pl.pos)) continue;
        Assembly next = current;
        next.place(pl.pos, pl.tile);
        if (!seen_.insert(next.placements()).second) continue;
        if (seen_.size() > table_cap) {
          throw BudgetExceeded("producible assembly table exceeded " + std::to_string(table_cap) +
                               " entries");
        }
        nodes_.push_back({idx, pl});
        if (!visit(nodes_.size() - 1, next)) return;
        queue.emplace_back(nodes_.size() - 1, std::move(next));
      }
    }
  }

  Trace trace(std::size_t idx) const {
    Trace out;
    for (std::size_t i = idx; i != 0 && i != kRoot; i = nodes_[i].parent) {
      out.push_back(nodes_[i].last);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  const Node& node(std::size_t idx) const { return nodes_[idx]; }

 private:
  const TileAssemblySystem& system_;
  Window window_;
  std::vector<Node> nodes_;
  std::unordered_set<std::vector<Placement>, PlacementHash> seen_;
};

}  // namespace

void for_each_producible(const TileAssemblySystem& system, const Window& window,
                         std::size_t max_size, std::size_t table_cap,
                         const std::function<bool(const Assembly&)>& visit) {
  Explorer explorer(system, window);
  explorer.run(max_size, table_cap,
               [&](std::size_t, const Assembly& a) { return visit(a); });
}

std::vector<Assembly> enumerate_producible(const TileAssemblySystem& system,
                                           const Window& window, std::size_t max_size,
                                           std::size_t table_cap) {
  std::vector<Assembly> out;
  for_each_producible(system, window, max_size, table_cap, [&](const Assembly& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

Assembly replay(const TileAssemblySystem& system, const Trace& trace) {
  Assembly a = system.seed();
  for (const auto& pl : trace) a = attach(system, a, pl.pos, pl.tile);
  return a;
}

// ---------------------------------------------------------------------------
// check_directed

namespace {

struct OutOfBudget {};

class DirectednessChecker {
 public:
  DirectednessChecker(const TileAssemblySystem& system, const Window& window, std::size_t budget)
      : system_(system), window_(window), budget_(budget) {
    for (const auto& [p, t] : system_.seed()) seed_positions_.insert(p);
  }

  DirectednessVerdict run(const DirectedOptions& options) {
    DirectednessVerdict verdict;
    try {
      if (options.force_exhaustive) {
        verdict = exhaustive();
      } else {
        verdict = staged();
      }
    } catch (const OutOfBudget&) {
      verdict.outcome = Inconclusive{"budget of " + std::to_string(budget_) +
                                     " work units exhausted during " + stage_};
      verdict.method = stage_;
    }
    verdict.work = work_;
    return verdict;
  }

 private:
  struct FpNode {
    Placement pl;
    std::size_t parent;  // supporting neighbour node; npos for seed placements
  };
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  void spend(std::size_t units = 1) {
    work_ += units;
    if (work_ > budget_) throw OutOfBudget{};
  }

  bool open(Vec2 p) const { return window_.contains(p) && !seed_positions_.count(p); }

  // Least fixed point of placements supported by already-reachable neighbours. Each
  // neighbour contributes its strongest bond, which over-approximates producibility.
  void fixed_point() {
    stage_ = "fixed-point";
    for (const auto& [p, t] : system_.seed()) {
      reach_[p].push_back(nodes_.size());
      nodes_.push_back({{p, t}, npos});
    }
    std::deque<Vec2> work;
    std::unordered_set<Vec2> queued;
    auto enqueue_neighbours = [&](Vec2 p) {
      for (Direction d : kDirections) {
        Vec2 q = p + offset(d);
        if (open(q) && queued.insert(q).second) work.push_back(q);
      }
    };
    for (const auto& [p, t] : system_.seed()) enqueue_neighbours(p);

    const auto n = static_cast<TileId>(system_.tiles().size());
    while (!work.empty()) {
      Vec2 p = work.front();
      work.pop_front();
      queued.erase(p);
      spend();
      auto& here = reach_[p];
      bool grew = false;
      for (TileId t = 0; t < n; ++t) {
        if (std::any_of(here.begin(), here.end(), [&](std::size_t i) { return nodes_[i].pl.tile == t; }))
          continue;
        int total = 0, best = 0;
        std::size_t support = npos;
        for (Direction d : kDirections) {
          auto it = reach_.find(p + offset(d));
          if (it == reach_.end()) continue;
          int strongest = 0;
          for (std::size_t i : it->second) {
            int s = system_.bond(t, nodes_[i].pl.tile, d);
            if (s > strongest) {
              strongest = s;
              if (s > best) {
                best = s;
                support = i;
              }
            }
          }
          total += strongest;
        }
        if (total >= system_.temperature()) {
          spend();
          reach_[p].push_back(nodes_.size());
          nodes_.push_back({{p, t}, support});
          grew = true;
        }
      }
      if (grew) enqueue_neighbours(p);
    }
  }

  std::vector<Vec2> conflict_positions() const {
    std::vector<Vec2> out;
    for (const auto& [p, ids] : reach_) {
      if (ids.size() >= 2) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  DirectednessVerdict staged() {
    fixed_point();
    auto conflicts = conflict_positions();
    DirectednessVerdict v;
    if (conflicts.empty()) {
      v.outcome = Directed{};
      v.method = "fixed-point";
      return v;
    }
    if (system_.temperature() == 1) return path_search(conflicts);
    return terminal_closure();
  }

  // --- any temperature. Let A be a terminal assembly in the window. Any producible
  // assembly that leaves A has a first attachment outside A, made to a producible
  // sub-assembly of A; outside dom A it would contradict terminality, so it places a
  // different tile at some p in dom A. Producible sub-assemblies of A are closed under
  // union, so it suffices to test the largest one avoiding p.

  // Attachments of A's own tiles reachable from the seed without using `blocked`, in
  // the order they become possible.
  Trace closure(const Assembly& target, std::optional<Vec2> blocked) {
    Assembly current = system_.seed();
    Trace order;
    std::deque<Vec2> work;
    auto push_neighbours = [&](Vec2 p) {
      for (Direction d : kDirections) {
        Vec2 q = p + offset(d);
        if (target.occupied(q) && !current.occupied(q) && q != blocked) work.push_back(q);
      }
    };
    for (const auto& [p, t] : system_.seed()) push_neighbours(p);
    while (!work.empty()) {
      Vec2 q = work.front();
      work.pop_front();
      spend();
      if (current.occupied(q)) continue;
      TileId t = *target.at(q);
      if (system_.attach_strength(current, q, t) < system_.temperature()) continue;
      current.place(q, t);
      order.push_back({q, t});
      push_neighbours(q);
    }
    return order;
  }

  DirectednessVerdict terminal_closure() {
    stage_ = "terminal-closure";
    DirectednessVerdict v;
    v.method = stage_;
    const auto n = static_cast<TileId>(system_.tiles().size());

    // grow a terminal assembly, stopping at the first position with two candidates
    Assembly terminal = system_.seed();
    Trace order;
    std::deque<Vec2> work;
    auto push_neighbours = [&](Vec2 p) {
      for (Direction d : kDirections) {
        Vec2 q = p + offset(d);
        if (window_.contains(q) && !terminal.occupied(q)) work.push_back(q);
      }
    };
    for (const auto& [p, t] : system_.seed()) push_neighbours(p);
    while (!work.empty()) {
      Vec2 q = work.front();
      work.pop_front();
      spend();
      if (terminal.occupied(q)) continue;
      std::vector<TileId> fits;
      for (TileId t = 0; t < n; ++t) {
        if (system_.attach_strength(terminal, q, t) >= system_.temperature()) fits.push_back(t);
      }
      if (fits.empty()) continue;
      if (fits.size() >= 2) {
        Trace a = order, b = order;
        a.push_back({q, fits[0]});
        b.push_back({q, fits[1]});
        v.outcome = ConflictWitness{q, fits[0], fits[1], std::move(a), std::move(b)};
        return v;
      }
      terminal.place(q, fits[0]);
      order.push_back({q, fits[0]});
      push_neighbours(q);
    }

    std::unordered_map<Vec2, std::size_t> step_of;
    for (std::size_t k = 0; k < order.size(); ++k) step_of[order[k].pos] = k;
    for (const auto& [p, tile] : terminal) {
      if (seed_positions_.count(p)) continue;
      Trace partial = closure(terminal, p);
      Assembly sub = system_.seed();
      for (const auto& pl : partial) sub.place(pl.pos, pl.tile);
      for (TileId t = 0; t < n; ++t) {
        if (t == tile) continue;
        spend();
        if (system_.attach_strength(sub, p, t) < system_.temperature()) continue;
        Trace a(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(step_of[p] + 1));
        partial.push_back({p, t});
        v.outcome = ConflictWitness{p, tile, t, std::move(a), std::move(partial)};
        return v;
      }
    }
    v.outcome = Directed{};
    return v;
  }

  // --- temperature 1: a placement is producible iff a simple bonded path from the seed
  // reaches it without crossing seed positions.

  std::optional<Trace> chain_trace(std::size_t node) const {
    Trace out;
    std::unordered_set<Vec2> used(seed_positions_.begin(), seed_positions_.end());
    for (std::size_t i = node; nodes_[i].parent != npos; i = nodes_[i].parent) {
      if (!used.insert(nodes_[i].pl.pos).second) return std::nullopt;
      out.push_back(nodes_[i].pl);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  std::optional<Trace> find_path(Vec2 target, TileId tile) {
    struct Frame {
      Placement head;
      std::vector<Placement> options;
      std::size_t next = 0;
    };
    auto expand = [&](const Placement& head, const std::unordered_set<Vec2>& used) {
      std::vector<Placement> opts;
      for (Direction d : kDirections) {
        Vec2 r = head.pos + offset(d);
        if (!open(r) || used.count(r)) continue;
        auto it = reach_.find(r);
        if (it == reach_.end()) continue;
        for (std::size_t i : it->second) {
          TileId t = nodes_[i].pl.tile;
          if (r == target && t != tile) continue;
          if (system_.bond(head.tile, t, d) >= 1) opts.push_back({r, t});
        }
      }
      auto dist = [&](Vec2 q) {
        return std::abs(q.x - target.x) + std::abs(q.y - target.y);
      };
      std::stable_sort(opts.begin(), opts.end(), [&](const Placement& a, const Placement& b) {
        return dist(a.pos) < dist(b.pos);
      });
      return opts;
    };

    for (const auto& [sp, st] : system_.seed()) {
      std::unordered_set<Vec2> used(seed_positions_.begin(), seed_positions_.end());
      std::vector<Frame> stack;
      Placement start{sp, st};
      stack.push_back({start, expand(start, used), 0});
      Trace path;
      while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next == f.options.size()) {
          stack.pop_back();
          if (!path.empty()) {
            used.erase(path.back().pos);
            path.pop_back();
          }
          continue;
        }
        Placement step = f.options[f.next++];
        spend();
        path.push_back(step);
        if (step.pos == target) return path;
        used.insert(step.pos);
        auto opts = expand(step, used);
        stack.push_back({step, std::move(opts), 0});
      }
    }
    return std::nullopt;
  }

  DirectednessVerdict path_search(const std::vector<Vec2>& conflicts) {
    stage_ = "path-search";
    DirectednessVerdict v;
    v.method = stage_;
    for (Vec2 p : conflicts) {
      std::vector<std::pair<TileId, Trace>> producible;
      std::vector<std::size_t> ids = reach_[p];
      std::sort(ids.begin(), ids.end(),
                [&](std::size_t a, std::size_t b) { return nodes_[a].pl.tile < nodes_[b].pl.tile; });
      for (std::size_t id : ids) {
        TileId t = nodes_[id].pl.tile;
        auto trace = chain_trace(id);
        if (!trace) trace = find_path(p, t);
        if (!trace) continue;
        producible.emplace_back(t, std::move(*trace));
        if (producible.size() == 2) {
          v.outcome = ConflictWitness{p, producible[0].first, producible[1].first,
                                      std::move(producible[0].second),
                                      std::move(producible[1].second)};
          return v;
        }
      }
    }
    v.outcome = Directed{};
    return v;
  }

  // --- any temperature: breadth-first over producible assemblies inside the window.

  DirectednessVerdict exhaustive() {
    stage_ = "exhaustive";
    DirectednessVerdict v;
    v.method = stage_;
    Explorer explorer(system_, window_);
    std::unordered_map<Vec2, std::pair<TileId, std::size_t>> first_seen;
    for (const auto& [p, t] : system_.seed()) first_seen.emplace(p, std::make_pair(t, 0));
    std::optional<ConflictWitness> witness;
    const std::size_t remaining = budget_ > work_ ? budget_ - work_ : 0;
    try {
      explorer.run(std::numeric_limits<std::size_t>::max(), remaining,
                   [&](std::size_t idx, const Assembly&) {
                     if (idx == 0) return true;
                     spend();
                     const Placement& last = explorer.node(idx).last;
                     auto [it, inserted] =
                         first_seen.emplace(last.pos, std::make_pair(last.tile, idx));
                     if (!inserted && it->second.first != last.tile) {
                       witness = ConflictWitness{last.pos, it->second.first, last.tile,
                                                 explorer.trace(it->second.second),
                                                 explorer.trace(idx)};
                       return false;
                     }
                     return true;
                   });
    } catch (const BudgetExceeded&) {
      throw OutOfBudget{};
    }
    if (witness) {
      v.outcome = std::move(*witness);
    } else {
      v.outcome = Directed{};
    }
    return v;
  }

  const TileAssemblySystem& system_;
  Window window_;
  std::size_t budget_;
  std::size_t work_ = 0;
  std::string stage_ = "fixed-point";
  std::unordered_set<Vec2> seed_positions_;
  std::vector<FpNode> nodes_;
  std::unordered_map<Vec2, std::vector<std::size_t>> reach_;
};

}  // namespace

DirectednessVerdict check_directed(const TileAssemblySystem& system, const Window& window,
                                   std::size_t budget, DirectedOptions options) {
  DirectednessChecker checker(system, window, budget);
  return checker.run(options);
}

}  // namespace tamlab
