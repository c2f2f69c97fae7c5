#include "tamlab/periodic.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "tamlab/errors.hpp"
#include "periodic_detail.hpp"

namespace tamlab {

namespace detail {

Coord floor_div(Coord a, Coord b) {
  Coord q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Coord ceil_div(Coord a, Coord b) { return -floor_div(-a, b); }

Interval step_interval(Vec2 p, Vec2 v, const Window& w, Coord lower) {
  Interval out{lower, std::numeric_limits<Coord>::max()};
  auto clip = [&](Coord c, Coord s, Coord lo, Coord hi) {
    if (s == 0) {
      if (c < lo || c > hi) out = Interval{1, 0};
      return;
    }
    Coord a = s > 0 ? ceil_div(lo - c, s) : ceil_div(hi - c, s);
    Coord b = s > 0 ? floor_div(hi - c, s) : floor_div(lo - c, s);
    out.lo = std::max(out.lo, a);
    out.hi = std::min(out.hi, b);
  };
  clip(p.x, v.x, w.x_min, w.x_max);
  if (!out.empty()) clip(p.y, v.y, w.y_min, w.y_max);
  return out;
}

Vec2 primitive(Vec2 v) {
  Coord g = std::gcd(v.x, v.y);
  return {v.x / g, v.y / g};
}

Coord coefficient(Vec2 v, Vec2 g) {
  if (v.is_zero()) return 0;
  return g.x != 0 ? v.x / g.x : v.y / g.y;
}

Coord cone_n_max(const SdpSet& part, const Window& w) {
  const Coord det = cross(part.u, part.v);
  Coord best = std::numeric_limits<Coord>::min();
  for (Coord cx : {w.x_min, w.x_max}) {
    for (Coord cy : {w.y_min, w.y_max}) {
      Vec2 q = Vec2{cx, cy} - part.base;
      best = std::max(best, floor_div(cross(q, part.v), det));
    }
  }
  return best;
}

}  // namespace detail

using detail::ceil_div;
using detail::floor_div;

SdpUnion SdpUnion::deduplicated() const {
  SdpUnion out{parts};
  std::sort(out.parts.begin(), out.parts.end());
  out.parts.erase(std::unique(out.parts.begin(), out.parts.end()), out.parts.end());
  return out;
}

std::string to_string(const SdpSet& part) {
  return "{b=" + to_string(part.base) + ", u=" + to_string(part.u) + ", v=" + to_string(part.v) +
         "}";
}

namespace {

// Inverse of a modulo m, for gcd(a, m) = 1 and m > 1.
Coord mod_inverse(Coord a, Coord m) {
  Coord old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    Coord q = old_r / r;
    Coord tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  Coord inv = old_s % m;
  return inv < 0 ? inv + m : inv;
}

}  // namespace

bool representable(Coord a, Coord c, Coord t) {
  if (a == 0 && c == 0) return t == 0;
  if (a == 0) std::swap(a, c);
  if (c == 0) return t % a == 0 && t / a >= 0;
  if ((a > 0) != (c > 0)) {
    // the kernel direction (|c|, |a|)/g is positive in both coordinates, so any integer
    // solution can be shifted into the nonnegative quadrant
    return t % std::gcd(a, c) == 0;
  }
  if (a < 0) {
    a = -a;
    c = -c;
    t = -t;
  }
  if (t < 0) return false;
  const Coord g = std::gcd(a, c);
  if (t % g != 0) return false;
  a /= g;
  c /= g;
  t /= g;
  if (c == 1) return true;
  // least n >= 0 with c | t - a*n
  const auto n0 = static_cast<Coord>(
      (static_cast<__int128>(t % c) * mod_inverse(a % c, c)) % c);
  return static_cast<__int128>(a) * n0 <= t;
}

bool contains_sdp(const SdpSet& part, Vec2 p) {
  const Vec2 q = p - part.base;
  const Vec2 u = part.u, v = part.v;
  if (u.is_zero() && v.is_zero()) return q.is_zero();
  const Coord det = cross(u, v);
  if (det != 0) {
    const Coord n_num = cross(q, v);
    const Coord m_num = cross(u, q);
    if (n_num % det != 0 || m_num % det != 0) return false;
    return n_num / det >= 0 && m_num / det >= 0;
  }
  const Vec2 g = detail::primitive(u.is_zero() ? v : u);
  if (cross(q, g) != 0) return false;
  const Coord t = detail::coefficient(q, g);
  return representable(detail::coefficient(u, g), detail::coefficient(v, g), t);
}

bool contains_union(const SdpUnion& set, Vec2 p) {
  return std::any_of(set.parts.begin(), set.parts.end(),
                     [&](const SdpSet& part) { return contains_sdp(part, p); });
}

void for_each_window_point(const SdpSet& part, const Window& w,
                           const std::function<void(Vec2)>& fn, std::size_t cap) {
  const Vec2 b = part.base, u = part.u, v = part.v;
  if (u.is_zero() && v.is_zero()) {
    if (w.contains(b)) fn(b);
    return;
  }
  if (cross(u, v) != 0) {
    const Coord n_max = detail::cone_n_max(part, w);
    if (n_max < 0) return;
    if (static_cast<std::size_t>(n_max) >= cap) {
      throw DegenerateRange("generating " + to_string(part) + " over " + to_string(w) +
                            " needs more than " + std::to_string(cap) + " steps");
    }
    for (Coord n = 0; n <= n_max; ++n) {
      const Vec2 p = b + n * u;
      auto range = detail::step_interval(p, v, w, 0);
      for (Coord m = range.lo; m <= range.hi; ++m) fn(p + m * v);
    }
    return;
  }
  // parallel periods: the points lie on the line b + t*g
  const Vec2 g = detail::primitive(u.is_zero() ? v : u);
  const Coord a = detail::coefficient(u, g), c = detail::coefficient(v, g);
  auto range = detail::step_interval(b, g, w, std::numeric_limits<Coord>::min() / 4);
  if (range.empty()) return;
  if (static_cast<std::size_t>(range.hi - range.lo) >= cap) {
    throw DegenerateRange("generating " + to_string(part) + " over " + to_string(w) +
                          " needs more than " + std::to_string(cap) + " steps");
  }
  for (Coord t = range.lo; t <= range.hi; ++t) {
    if (representable(a, c, t)) fn(b + t * g);
  }
}

PointSet window_points(const SdpSet& part, const Window& w, std::size_t cap) {
  PointSet out;
  for_each_window_point(part, w, [&](Vec2 p) { out.insert(p); }, cap);
  return out;
}

PointSet window_points(const SdpUnion& set, const Window& w, std::size_t cap) {
  PointSet out;
  for (const auto& part : set.parts) {
    for_each_window_point(part, w, [&](Vec2 p) { out.insert(p); }, cap);
  }
  return out;
}

std::optional<Vec2> equal_on_window(const SdpUnion& a, const SdpUnion& b, const Window& w) {
  PointSet pa = window_points(a, w);
  PointSet pb = window_points(b, w);
  auto ia = pa.begin();
  auto ib = pb.begin();
  while (ia != pa.end() && ib != pb.end()) {
    if (*ia == *ib) {
      ++ia;
      ++ib;
    } else {
      return std::min(*ia, *ib);
    }
  }
  if (ia != pa.end()) return *ia;
  if (ib != pb.end()) return *ib;
  return std::nullopt;
}

bool EventuallyPeriodicRow::member(Coord x) const {
  const Coord k = x - left_bound;
  if (k < 0) return false;
  const auto uk = static_cast<std::size_t>(k);
  if (uk < preperiod) return prefix_members[uk];
  return cycle_members[(uk - preperiod) % period];
}

EventuallyPeriodicRow row_slice(const SdpUnion& set, Coord y, Coord left_bound,
                                std::size_t probe_width) {
  std::vector<bool> bits(probe_width);
  for (std::size_t k = 0; k < probe_width; ++k) {
    bits[k] = contains_union(set, {left_bound + static_cast<Coord>(k), y});
  }
  const std::size_t max_period = probe_width / 3;
  for (std::size_t pre = 0; pre < probe_width; ++pre) {
    for (std::size_t per = 1; per <= max_period && pre + 2 * per <= probe_width; ++per) {
      bool consistent = true;
      for (std::size_t k = pre; k + per < probe_width && consistent; ++k) {
        consistent = bits[k] == bits[k + per];
      }
      if (!consistent) continue;
      EventuallyPeriodicRow row;
      row.y = y;
      row.left_bound = left_bound;
      row.preperiod = pre;
      row.period = per;
      row.prefix_members.assign(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(pre));
      row.cycle_members.assign(bits.begin() + static_cast<std::ptrdiff_t>(pre),
                               bits.begin() + static_cast<std::ptrdiff_t>(pre + per));
      bool certified = true;
      for (std::size_t k = probe_width; k < probe_width + 3 * per && certified; ++k) {
        const Coord x = left_bound + static_cast<Coord>(k);
        certified = row.member(x) == contains_union(set, {x, y});
      }
      if (certified) return row;
    }
  }
  throw ProbeTooNarrow("row " + std::to_string(y) + " has no eventually periodic description "
                       "with period <= " + std::to_string(max_period) + " in a probe of width " +
                       std::to_string(probe_width));
}

PredictionResult predictive_check(const SdpUnion& set, const PointSet& observed, const Window& w,
                                  const Window& w2) {
  if (!w2.contains(w)) {
    throw WindowNotNested(to_string(w) + " is not inside " + to_string(w2));
  }
  PointSet predicted = window_points(set, w2);
  PointSet actual;
  for (Vec2 p : observed) {
    if (w2.contains(p)) actual.insert(p);
  }
  PredictionResult r;
  std::vector<Vec2> diff;
  std::set_symmetric_difference(predicted.begin(), predicted.end(), actual.begin(), actual.end(),
                                std::back_inserter(diff));
  r.ok = diff.empty();
  if (!diff.empty()) r.mismatch = diff.front();
  return r;
}

}  // namespace tamlab
