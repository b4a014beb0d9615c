#pragma once
// Trace rendering: an ASCII coverage map for terminals and an SVG with
// the same information for reports. Obstacles draw in blue, key points
// in green, the traversed route as a red polyline, replans as orange
// markers. Both outputs are deterministic text.

#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include "gridnav/errors.hpp"
#include "gridnav/map.hpp"
#include "gridnav/scenario.hpp"
#include "gridnav/trace.hpp"

namespace gridnav {

// A trace must stay on the scenario's map: in bounds, off static
// obstacles, and moving at most one cell per tick.
inline void check_trace_consistency(const MissionTrace& t, const Scenario& sc) {
  const GridMap& map = sc.map;
  for (size_t i = 0; i < t.records.size(); ++i) {
    const Cell c = t.records[i].cell;
    if (!map.in_bounds(c))
      throw ValidationError("InconsistentTrace: cell " + to_string(c) +
                            " at tick " + std::to_string(t.records[i].tick) +
                            " is outside the map");
    if (map.is_blocked(c))
      throw ValidationError("InconsistentTrace: cell " + to_string(c) +
                            " at tick " + std::to_string(t.records[i].tick) +
                            " is a static obstacle");
    if (i > 0) {
      const Cell p = t.records[i - 1].cell;
      const int span = std::abs(c.row - p.row) + std::abs(c.col - p.col);
      if (span > 1)
        throw ValidationError("InconsistentTrace: jump from " + to_string(p) +
                              " to " + to_string(c) + " at tick " +
                              std::to_string(t.records[i].tick));
    }
  }
}

inline std::string render_ascii(const MissionTrace& t, const Scenario& sc) {
  check_trace_consistency(t, sc);
  const GridMap& map = sc.map;

  std::set<Cell> visited;
  for (const auto& r : t.records) visited.insert(r.cell);

  std::ostringstream out;
  for (int row = 0; row < map.rows; ++row) {
    for (int col = 0; col < map.cols; ++col) {
      const Cell c{row, col};
      char glyph = map.is_blocked(c) ? '#' : '.';
      if (visited.count(c)) glyph = '*';
      for (const auto& p : sc.keypoints.others)
        if (p == c) glyph = 'K';
      if (sc.keypoints.origin == c) glyph = 'O';
      if (!t.records.empty() && t.records.back().cell == c) glyph = 'R';
      out << glyph;
    }
    out << "\n";
  }
  out << "legend: # obstacle  . free  O origin  K key point  * path  R end\n";
  return out.str();
}

namespace detail {

inline int svg_x(int col, int px) { return col * px + px / 2; }
inline int svg_y(int row, int px) { return row * px + px / 2; }

}  // namespace detail

inline std::string render_svg(const MissionTrace& t, const Scenario& sc) {
  check_trace_consistency(t, sc);
  const GridMap& map = sc.map;
  const int px = 24;
  const int w = map.cols * px;
  const int h = map.rows * px;
  const int legend_h = 48;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
      << h + legend_h << "\" viewBox=\"0 0 " << w << " " << h + legend_h << "\">\n";
  out << "<rect width=\"" << w << "\" height=\"" << h + legend_h
      << "\" fill=\"white\"/>\n";

  // grid cells: free white, static obstacles blue
  for (int row = 0; row < map.rows; ++row)
    for (int col = 0; col < map.cols; ++col)
      out << "<rect x=\"" << col * px << "\" y=\"" << row * px << "\" width=\"" << px
          << "\" height=\"" << px << "\" fill=\""
          << (map.is_blocked(Cell{row, col}) ? "#3b6fd4" : "white")
          << "\" stroke=\"#d0d0d0\"/>\n";

  // key points green, origin with a dark ring
  for (int i = 0; i < sc.keypoints.size(); ++i) {
    const Cell c = sc.keypoints.at(i);
    out << "<circle cx=\"" << detail::svg_x(c.col, px) << "\" cy=\""
        << detail::svg_y(c.row, px) << "\" r=\"" << px / 3 << "\" fill=\"#35a853\"";
    if (i == 0) out << " stroke=\"#1b5e20\" stroke-width=\"3\"";
    out << "/>\n";
  }

  // traversed route as a red polyline through cell centers
  if (!t.records.empty()) {
    out << "<polyline fill=\"none\" stroke=\"#d43b3b\" stroke-width=\"2\" points=\"";
    Cell prev{-1, -1};
    bool first = true;
    for (const auto& r : t.records) {
      if (!first && r.cell == prev) continue;
      if (!first) out << " ";
      out << detail::svg_x(r.cell.col, px) << "," << detail::svg_y(r.cell.row, px);
      prev = r.cell;
      first = false;
    }
    out << "\"/>\n";
  }

  // replan events as orange markers where the replan count steps up
  int seen_replans = 0;
  for (const auto& r : t.records) {
    if (r.replans > seen_replans) {
      seen_replans = r.replans;
      out << "<circle cx=\"" << detail::svg_x(r.cell.col, px) << "\" cy=\""
          << detail::svg_y(r.cell.row, px) << "\" r=\"" << px / 4
          << "\" fill=\"none\" stroke=\"#f29a1f\" stroke-width=\"3\"/>\n";
    }
  }

  // end position cross
  if (!t.records.empty()) {
    const Cell e = t.records.back().cell;
    const int cx = detail::svg_x(e.col, px);
    const int cy = detail::svg_y(e.row, px);
    out << "<line x1=\"" << cx - px / 4 << "\" y1=\"" << cy - px / 4 << "\" x2=\""
        << cx + px / 4 << "\" y2=\"" << cy + px / 4
        << "\" stroke=\"#222\" stroke-width=\"2\"/>\n";
    out << "<line x1=\"" << cx - px / 4 << "\" y1=\"" << cy + px / 4 << "\" x2=\""
        << cx + px / 4 << "\" y2=\"" << cy - px / 4
        << "\" stroke=\"#222\" stroke-width=\"2\"/>\n";
  }

  // legend strip
  const int ly = h + 18;
  out << "<rect x=\"8\" y=\"" << ly - 10 << "\" width=\"12\" height=\"12\" fill=\"#3b6fd4\"/>"
      << "<text x=\"24\" y=\"" << ly << "\" font-size=\"12\">obstacle</text>\n";
  out << "<circle cx=\"94\" cy=\"" << ly - 4 << "\" r=\"6\" fill=\"#35a853\"/>"
      << "<text x=\"106\" y=\"" << ly << "\" font-size=\"12\">key point</text>\n";
  out << "<line x1=\"176\" y1=\"" << ly - 4 << "\" x2=\"200\" y2=\"" << ly - 4
      << "\" stroke=\"#d43b3b\" stroke-width=\"2\"/>"
      << "<text x=\"206\" y=\"" << ly << "\" font-size=\"12\">route</text>\n";
  out << "<circle cx=\"260\" cy=\"" << ly - 4
      << "\" r=\"6\" fill=\"none\" stroke=\"#f29a1f\" stroke-width=\"3\"/>"
      << "<text x=\"272\" y=\"" << ly << "\" font-size=\"12\">replan</text>\n";
  out << "</svg>\n";
  return out.str();
}

inline std::string render_trace(const MissionTrace& t, const Scenario& sc,
                                const std::string& style) {
  if (style == "ascii") return render_ascii(t, sc);
  if (style == "svg") return render_svg(t, sc);
  throw ValidationError("unknown render style '" + style + "', expected ascii or svg");
}

}  // namespace gridnav
