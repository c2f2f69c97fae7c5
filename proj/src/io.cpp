#include "tamlab/io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "tamlab/errors.hpp"

namespace tamlab {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

template <class Int>
std::optional<Int> parse_int(const std::string& tok) {
  Int value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  return value;
}

std::optional<Direction> parse_side(const std::string& tok) {
  if (tok == "north") return Direction::North;
  if (tok == "east") return Direction::East;
  if (tok == "south") return Direction::South;
  if (tok == "west") return Direction::West;
  return std::nullopt;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

}  // namespace

TasDocument parse_tas(std::string_view text) {
  TasDocument doc;
  bool have_temperature = false;
  std::optional<TileType> open_tile;
  std::size_t open_line = 0;
  std::array<bool, 4> sides_seen{};
  std::set<std::string> names;
  std::vector<std::size_t> seed_lines;

  const auto lines = split_lines(text);
  for (std::size_t ln = 1; ln <= lines.size(); ++ln) {
    auto tok = tokenize(lines[ln - 1]);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];

    if (open_tile) {
      if (kw == "end") {
        if (tok.size() != 1) throw ParseError(ln, "'end' takes no arguments");
        for (Direction d : kDirections) {
          if (!sides_seen[index(d)]) {
            throw ParseError(ln, "tile '" + open_tile->name + "' is missing its " +
                                     to_string(d) + " glue");
          }
        }
        doc.tiles.push_back(std::move(*open_tile));
        open_tile.reset();
        continue;
      }
      auto side = parse_side(kw);
      if (!side) throw ParseError(ln, "expected a side or 'end' inside tile block, got '" + kw + "'");
      if (tok.size() != 3) throw ParseError(ln, "glue line needs '<side> <label|-> <strength>'");
      if (sides_seen[index(*side)]) {
        throw ParseError(ln, "duplicate " + kw + " glue for tile '" + open_tile->name + "'");
      }
      auto strength = parse_int<int>(tok[2]);
      if (!strength) throw ParseError(ln, "malformed strength '" + tok[2] + "'");
      if (*strength < 0) throw ParseError(ln, "strength must be nonnegative, got " + tok[2]);
      Glue g;
      if (tok[1] == "-") {
        if (*strength != 0) throw ParseError(ln, "NULL glue '-' must have strength 0");
      } else {
        if (*strength == 0) throw ParseError(ln, "labelled glue '" + tok[1] + "' needs strength >= 1");
        g.label = tok[1];
        g.strength = *strength;
      }
      open_tile->side(*side) = g;
      sides_seen[index(*side)] = true;
      continue;
    }

    if (kw == "temperature") {
      if (have_temperature) throw ParseError(ln, "temperature given twice");
      if (tok.size() != 2) throw ParseError(ln, "usage: temperature <int>");
      auto t = parse_int<int>(tok[1]);
      if (!t || *t < 1) throw ParseError(ln, "temperature must be an integer >= 1");
      doc.temperature = *t;
      have_temperature = true;
    } else if (kw == "tile") {
      if (tok.size() < 2 || tok.size() > 3 || (tok.size() == 3 && tok[2] != "black")) {
        throw ParseError(ln, "usage: tile <name> [black]");
      }
      if (!names.insert(tok[1]).second) throw ParseError(ln, "duplicate tile name '" + tok[1] + "'");
      open_tile = TileType{tok[1], {}, tok.size() == 3};
      open_line = ln;
      sides_seen = {};
    } else if (kw == "seed") {
      if (tok.size() != 4) throw ParseError(ln, "usage: seed <x> <y> <name>");
      auto x = parse_int<Coord>(tok[1]);
      auto y = parse_int<Coord>(tok[2]);
      if (!x || !y) throw ParseError(ln, "malformed seed coordinates");
      doc.seed.push_back({{*x, *y}, tok[3]});
      seed_lines.push_back(ln);
    } else {
      throw ParseError(ln, "unknown keyword '" + kw + "'");
    }
  }
  if (open_tile) throw ParseError(open_line, "tile '" + open_tile->name + "' has no 'end'");
  if (!have_temperature) throw ParseError(0, "missing 'temperature' line");
  if (doc.seed.empty()) throw ParseError(0, "at least one 'seed' line is required");
  std::set<Vec2> seed_positions;
  for (std::size_t k = 0; k < doc.seed.size(); ++k) {
    if (!names.count(doc.seed[k].tile)) {
      throw ParseError(seed_lines[k], "seed references undefined tile '" + doc.seed[k].tile + "'");
    }
    if (!seed_positions.insert(doc.seed[k].pos).second) {
      throw ParseError(seed_lines[k], "two seed tiles at " + to_string(doc.seed[k].pos));
    }
  }
  return doc;
}

std::string serialize_tas(const TasDocument& doc) {
  std::ostringstream out;
  out << "temperature " << doc.temperature << "\n";
  for (const auto& t : doc.tiles) {
    out << "tile " << t.name << (t.black ? " black" : "") << "\n";
    for (Direction d : kDirections) {
      const Glue& g = t.side(d);
      out << "  " << to_string(d) << " " << (g.is_null() ? "-" : g.label) << " " << g.strength
          << "\n";
    }
    out << "end\n";
  }
  for (const auto& s : doc.seed) out << "seed " << s.pos.x << " " << s.pos.y << " " << s.tile << "\n";
  return out.str();
}

TileAssemblySystem TasDocument::build() const {
  TileSet set(tiles);
  Assembly seed_assembly;
  for (const auto& s : seed) {
    auto id = set.find(s.tile);
    if (!id) throw UnknownTileType("seed references undefined tile '" + s.tile + "'");
    seed_assembly.place(s.pos, *id);
  }
  return TileAssemblySystem(std::move(set), std::move(seed_assembly), temperature);
}

PointSet parse_points(std::string_view text) {
  PointSet out;
  const auto lines = split_lines(text);
  for (std::size_t ln = 1; ln <= lines.size(); ++ln) {
    auto tok = tokenize(lines[ln - 1]);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw ParseError(ln, "expected 'x y'");
    auto x = parse_int<Coord>(tok[0]);
    auto y = parse_int<Coord>(tok[1]);
    if (!x || !y) throw ParseError(ln, "malformed integer coordinates");
    out.insert({*x, *y});
  }
  return out;
}

std::string format_points(const PointSet& points) {
  std::ostringstream out;
  for (Vec2 p : points) out << p.x << " " << p.y << "\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace tamlab
