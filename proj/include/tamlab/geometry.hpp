#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

namespace tamlab {

using Coord = std::int64_t;

/// Integer lattice point / vector. Ordered lexicographically by (x, y).
struct Vec2 {
  Coord x = 0;
  Coord y = 0;

  friend constexpr auto operator<=>(const Vec2&, const Vec2&) = default;
  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(Coord k, Vec2 a) { return {k * a.x, k * a.y}; }

  constexpr bool is_zero() const { return x == 0 && y == 0; }
  /// Chebyshev norm.
  constexpr Coord norm_inf() const {
    Coord ax = x < 0 ? -x : x;
    Coord ay = y < 0 ? -y : y;
    return ax > ay ? ax : ay;
  }
};

constexpr Coord cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

std::string to_string(Vec2 p);

struct Vec2Hash {
  std::size_t operator()(const Vec2& p) const noexcept {
    auto h = static_cast<std::uint64_t>(p.x) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(p.y) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

enum class Direction : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

inline constexpr std::array<Direction, 4> kDirections = {Direction::North, Direction::East,
                                                         Direction::South, Direction::West};

constexpr Direction opposite(Direction d) {
  return static_cast<Direction>((static_cast<int>(d) + 2) % 4);
}

constexpr Vec2 offset(Direction d) {
  switch (d) {
    case Direction::North: return {0, 1};
    case Direction::East: return {1, 0};
    case Direction::South: return {0, -1};
    case Direction::West: return {-1, 0};
  }
  return {0, 0};
}

constexpr int index(Direction d) { return static_cast<int>(d); }

const char* to_string(Direction d);

/// Direction d with to == from + offset(d), if the two points are cardinal neighbours.
bool direction_between(Vec2 from, Vec2 to, Direction& out);

/// Closed axis-aligned rectangle [x_min, x_max] x [y_min, y_max].
struct Window {
  Coord x_min = 0;
  Coord y_min = 0;
  Coord x_max = 0;
  Coord y_max = 0;

  /// Throws std::invalid_argument when min > max on either axis.
  static Window make(Coord x0, Coord y0, Coord x1, Coord y1);
  /// [0, n-1]^2
  static Window square(Coord n) { return make(0, 0, n - 1, n - 1); }

  friend bool operator==(const Window&, const Window&) = default;

  Coord width() const { return x_max - x_min + 1; }
  Coord height() const { return y_max - y_min + 1; }
  Coord point_count() const { return width() * height(); }

  bool contains(Vec2 p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  bool contains(const Window& inner) const {
    return inner.x_min >= x_min && inner.x_max <= x_max && inner.y_min >= y_min &&
           inner.y_max <= y_max;
  }
  /// Row-major index of an in-window point, x fastest.
  std::size_t index_of(Vec2 p) const {
    return static_cast<std::size_t>((p.y - y_min) * width() + (p.x - x_min));
  }
  Vec2 point_at(std::size_t i) const {
    auto w = static_cast<std::size_t>(width());
    return {x_min + static_cast<Coord>(i % w), y_min + static_cast<Coord>(i / w)};
  }
  /// Chebyshev diameter.
  Coord diameter() const { return std::max(width(), height()) - 1; }
};

std::string to_string(const Window& w);

}  // namespace tamlab

template <>
struct std::hash<tamlab::Vec2> : tamlab::Vec2Hash {};
