#include "tamlab/render.hpp"

#include <sstream>

namespace tamlab {

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_ascii(const TileSet& tiles, const Assembly& assembly, const Window& w,
                         bool compact) {
  std::string out;
  out.reserve(static_cast<std::size_t>((w.width() + 1) * w.height()));
  for (Coord y = w.y_max; y >= w.y_min; --y) {
    for (Coord x = w.x_min; x <= w.x_max; ++x) {
      auto t = assembly.at({x, y});
      if (!t) {
        out += '.';
      } else if (compact) {
        out += tiles.at(*t).black ? '#' : '*';
      } else {
        out += tiles.at(*t).name.front();
      }
    }
    out += '\n';
  }
  return out;
}

std::string render_svg(const TileSet& tiles, const Assembly& assembly, const Assembly& seed,
                       const Window& w) {
  std::ostringstream out;
  const Coord width = w.width(), height = w.height();
  // cell (x, y) occupies row y_max - y so that y grows upward
  auto row = [&](Coord y) { return w.y_max - y; };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << " " << height
      << "\" width=\"" << width * 8 << "\" height=\"" << height * 8 << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  for (const auto& [p, t] : assembly.cells()) {
    if (!w.contains(p)) continue;
    const bool black = tiles.at(t).black;
    out << "<rect x=\"" << p.x - w.x_min << "\" y=\"" << row(p.y) << "\" width=\"1\" height=\"1\""
        << " fill=\"" << (black ? "black" : "#d8d8d8") << "\"><title>" << xml_escape(tiles.at(t).name)
        << "</title></rect>\n";
  }
  for (const auto& [p, t] : seed.cells()) {
    if (!w.contains(p)) continue;
    out << "<rect x=\"" << p.x - w.x_min << "\" y=\"" << row(p.y)
        << "\" width=\"1\" height=\"1\" fill=\"none\" stroke=\"red\" stroke-width=\"0.15\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace tamlab
