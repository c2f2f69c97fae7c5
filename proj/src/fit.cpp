// Bounded search for a finite union of semi-doubly periodic sets matching a sample.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "periodic_detail.hpp"
#include "tamlab/errors.hpp"
#include "tamlab/periodic.hpp"

namespace tamlab {

namespace {

using Bits = std::vector<std::uint64_t>;

std::size_t popcount_and(const Bits& a, const Bits& b) {
  std::size_t n = 0;
  for (std::size_t k = 0; k < a.size(); ++k) n += static_cast<std::size_t>(std::popcount(a[k] & b[k]));
  return n;
}

struct BitsHash {
  std::size_t operator()(const Bits& b) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto w : b) {
      h ^= w;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

class Fitter {
 public:
  Fitter(const PointSet& sample, const Window& w, const FitOptions& options)
      : w_(w), n_(static_cast<std::size_t>(w.point_count())), options_(options) {
    in_sample_.assign(n_, 0);
    for (Vec2 p : sample) {
      if (!w_.contains(p)) {
        throw std::invalid_argument("sample point " + to_string(p) + " lies outside " +
                                    to_string(w_));
      }
      in_sample_[w_.index_of(p)] = 1;
      sample_.push_back(p);
    }
    const Coord b = options_.max_coord;
    for (Coord x = -b; x <= b; ++x) {
      for (Coord y = -b; y <= b; ++y) {
        if (x != 0 || y != 0) dirs_.push_back({x, y});
      }
    }
    build_ray_tables();
    valid_rays_.resize(sample_.size());
    for (std::size_t s = 0; s < sample_.size(); ++s) {
      const std::size_t at = w_.index_of(sample_[s]) * dirs_.size();
      for (std::size_t d = 0; d < dirs_.size(); ++d) {
        if (ray_ok_[at + d]) valid_rays_[s].push_back(static_cast<std::uint32_t>(d));
      }
    }
  }

  FitResult run() {
    FitResult result;
    if (sample_.empty()) {
      result.fit = SdpUnion{};
      result.strategy = "greedy";
      result.exhaustive = true;
      return result;
    }
    if (greedy(result)) return result;
    if (options_.max_parts * result.best_single_cover < sample_.size()) {
      result.strategy = "bound";
      result.exhaustive = true;
      return result;
    }
    backtrack(result);
    return result;
  }

 private:
  // --- ray tables: for every in-window q and direction d, whether the in-window part of
  // {q + m*d : m >= 0} lies in the sample, and how many of its points are uncovered.

  void build_ray_tables() {
    const std::size_t nd = dirs_.size();
    ray_ok_.assign(n_ * nd, 0);
    ray_cnt_.assign(n_ * nd, 0);
    uncovered_.assign(in_sample_.begin(), in_sample_.end());
    uncovered_count_ = sample_.size();
    for (std::size_t d = 0; d < nd; ++d) fill_direction(d, true);
  }

  void refresh_counts() {
    for (std::size_t d = 0; d < dirs_.size(); ++d) fill_direction(d, false);
  }

  void fill_direction(std::size_t d, bool with_ok) {
    const std::size_t nd = dirs_.size();
    const Vec2 v = dirs_[d];
    std::vector<std::size_t> chain;
    for (std::size_t i = 0; i < n_; ++i) {
      const Vec2 head = w_.point_at(i);
      if (w_.contains(head - v)) continue;  // not the start of a chain
      chain.clear();
      for (Vec2 q = head; w_.contains(q); q = q + v) chain.push_back(w_.index_of(q));
      char ok = 1;
      std::int32_t cnt = 0;
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        ok = ok && in_sample_[*it];
        cnt += uncovered_[*it];
        if (with_ok) ray_ok_[*it * nd + d] = ok;
        ray_cnt_[*it * nd + d] = cnt;
      }
    }
  }

  // first in-window point of {p + m*dirs_[d] : m >= 0}, or npos
  std::size_t entry(Vec2 p, std::size_t d) const {
    auto range = detail::step_interval(p, dirs_[d], w_, 0);
    if (range.empty()) return npos;
    return w_.index_of(p + range.lo * dirs_[d]);
  }

  // --- candidates

  // Evaluates (b, u, v). Returns false if the part leaves the sample; otherwise sets
  // cover to the number of uncovered sample points it contains (when asked).
  bool evaluate(const SdpSet& part, std::size_t ui, std::size_t vi, bool want_cover,
                std::size_t& cover) const {
    cover = 0;
    const std::size_t nd = dirs_.size();
    if (part.u.is_zero()) {
      cover = uncovered_[w_.index_of(part.base)];
      return true;
    }
    if (part.v.is_zero()) {
      if (want_cover) cover = static_cast<std::size_t>(ray_cnt_[w_.index_of(part.base) * nd + ui]);
      return true;
    }
    if (cross(part.u, part.v) != 0) {
      const Coord n_max = detail::cone_n_max(part, w_);
      for (Coord n = 0; n <= n_max; ++n) {
        const std::size_t at = entry(part.base + n * part.u, vi);
        if (at == npos) continue;
        if (!ray_ok_[at * nd + vi]) return false;
        if (want_cover) cover += static_cast<std::size_t>(ray_cnt_[at * nd + vi]);
      }
      return true;
    }
    bool ok = true;
    for_each_window_point(part, w_, [&](Vec2 q) {
      const std::size_t i = w_.index_of(q);
      if (!in_sample_[i]) ok = false;
      cover += uncovered_[i];
    });
    return ok;
  }

  // Visits every part contained in the sample: singletons, rays, then pairs of
  // directions (ui < vi) whose rays from the base both stay in the sample.
  template <class Visit>
  void for_each_candidate(bool want_cover, Visit&& visit) const {
    std::size_t cover = 0;
    for (std::size_t s = 0; s < sample_.size(); ++s) {
      const Vec2 b = sample_[s];
      SdpSet single{b, {0, 0}, {0, 0}};
      evaluate(single, 0, 0, want_cover, cover);
      visit(single, cover);
      const auto& rays = valid_rays_[s];
      for (std::uint32_t ui : rays) {
        SdpSet ray{b, dirs_[ui], {0, 0}};
        evaluate(ray, ui, 0, want_cover, cover);
        visit(ray, cover);
      }
      for (std::size_t a = 0; a < rays.size(); ++a) {
        for (std::size_t c = a + 1; c < rays.size(); ++c) {
          SdpSet pair{b, dirs_[rays[a]], dirs_[rays[c]]};
          if (evaluate(pair, rays[a], rays[c], want_cover, cover)) visit(pair, cover);
        }
      }
    }
  }

  void cover_part(const SdpSet& part) {
    for_each_window_point(part, w_, [&](Vec2 q) {
      auto i = w_.index_of(q);
      if (uncovered_[i]) {
        uncovered_[i] = 0;
        --uncovered_count_;
      }
    });
  }

  bool greedy(FitResult& result) {
    SdpUnion chosen;
    for (std::size_t pick = 0; pick < options_.max_parts && uncovered_count_ > 0; ++pick) {
      std::size_t best_cover = 0;
      SdpSet best{};
      for_each_candidate(true, [&](const SdpSet& part, std::size_t cover) {
        if (pick == 0) ++result.candidates;
        if (cover > best_cover) {
          best_cover = cover;
          best = part;
        }
      });
      if (pick == 0) result.best_single_cover = best_cover;
      if (best_cover == 0) break;
      chosen.parts.push_back(best);
      cover_part(best);
      refresh_counts();
    }
    result.greedy_parts = chosen;
    result.greedy_uncovered.clear();
    for (Vec2 p : sample_) {
      if (uncovered_[w_.index_of(p)]) result.greedy_uncovered.push_back(p);
    }
    if (uncovered_count_ != 0) return false;
    result.fit = chosen;
    result.strategy = "greedy";
    return true;
  }

  // --- exhaustive branch and bound over materialised candidates

  void backtrack(FitResult& result) {
    const std::size_t words = (n_ + 63) / 64;
    std::vector<SdpSet> parts;
    std::vector<Bits> bits;
    std::unordered_map<Bits, std::size_t, BitsHash> seen;
    for_each_candidate(false, [&](const SdpSet& part, std::size_t) {
      Bits b(words, 0);
      for_each_window_point(part, w_, [&](Vec2 q) {
        auto i = w_.index_of(q);
        b[i / 64] |= std::uint64_t{1} << (i % 64);
      });
      if (seen.emplace(b, parts.size()).second) {
        if (parts.size() >= options_.candidate_cap) {
          throw SearchSpaceExceeded("more than " + std::to_string(options_.candidate_cap) +
                                    " distinct candidate parts");
        }
        parts.push_back(part);
        bits.push_back(std::move(b));
      }
    });
    result.candidates = parts.size();

    std::vector<std::vector<std::uint32_t>> containing(n_);
    for (std::size_t c = 0; c < bits.size(); ++c) {
      for (std::size_t k = 0; k < words; ++k) {
        for (std::uint64_t word = bits[c][k]; word != 0; word &= word - 1) {
          containing[k * 64 + static_cast<std::size_t>(std::countr_zero(word))].push_back(
              static_cast<std::uint32_t>(c));
        }
      }
    }

    Bits all(words, 0);
    for (Vec2 p : sample_) {
      auto i = w_.index_of(p);
      all[i / 64] |= std::uint64_t{1} << (i % 64);
    }

    std::vector<std::size_t> chosen;
    std::vector<std::size_t> cover(bits.size());
    std::function<bool(const Bits&)> search = [&](const Bits& open) -> bool {
      if (++result.nodes > options_.node_cap) {
        throw SearchSpaceExceeded("backtracking exceeded " + std::to_string(options_.node_cap) +
                                  " nodes");
      }
      std::size_t open_count = 0;
      for (auto word : open) open_count += static_cast<std::size_t>(std::popcount(word));
      if (open_count == 0) return true;
      const std::size_t slots = options_.max_parts - chosen.size();
      if (slots == 0) return false;

      for (std::size_t c = 0; c < bits.size(); ++c) cover[c] = popcount_and(bits[c], open);
      std::vector<std::size_t> top(cover);
      const std::size_t r = std::min(slots, top.size());
      std::partial_sort(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(r), top.end(),
                        std::greater<>());
      std::size_t reach = 0;
      for (std::size_t k = 0; k < r; ++k) reach += top[k];
      if (reach < open_count) return false;

      std::size_t first = 0;
      while (open[first / 64] == 0) first += 64;
      first = (first / 64) * 64 + static_cast<std::size_t>(std::countr_zero(open[first / 64]));
      std::vector<std::uint32_t> branch = containing[first];
      std::vector<std::size_t> local(branch.size());
      for (std::size_t k = 0; k < branch.size(); ++k) local[k] = cover[branch[k]];
      std::vector<std::size_t> order(branch.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return local[a] > local[b]; });
      for (std::size_t k : order) {
        const auto c = branch[k];
        Bits next(open);
        for (std::size_t i = 0; i < words; ++i) next[i] &= ~bits[c][i];
        chosen.push_back(c);
        if (search(next)) return true;
        chosen.pop_back();
      }
      return false;
    };

    result.strategy = "backtracking";
    result.exhaustive = true;
    if (search(all)) {
      SdpUnion u;
      for (auto c : chosen) u.parts.push_back(parts[c]);
      result.fit = u;
    }
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Window w_;
  std::size_t n_;
  FitOptions options_;
  std::vector<char> in_sample_;
  std::vector<Vec2> sample_;
  std::vector<Vec2> dirs_;
  std::vector<char> ray_ok_;
  std::vector<std::int32_t> ray_cnt_;
  std::vector<char> uncovered_;
  std::size_t uncovered_count_ = 0;
  std::vector<std::vector<std::uint32_t>> valid_rays_;
};

}  // namespace

FitResult fit_union_detailed(const PointSet& sample, const Window& w, const FitOptions& options) {
  if (options.max_coord < 0) throw std::invalid_argument("max_coord must be nonnegative");
  Fitter fitter(sample, w, options);
  FitResult r = fitter.run();
  if (r.fit && window_points(*r.fit, w) != sample) {
    throw std::logic_error("fitted union does not reproduce the sample");
  }
  return r;
}

std::optional<SdpUnion> fit_union(const PointSet& sample, const Window& w, std::size_t max_parts,
                                  Coord max_coord) {
  FitOptions options;
  options.max_parts = max_parts;
  options.max_coord = max_coord;
  return fit_union_detailed(sample, w, options).fit;
}

}  // namespace tamlab
