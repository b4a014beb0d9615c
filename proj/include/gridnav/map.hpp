#pragma once
// Occupancy grid, the four-direction move table, and key point sets.
// Maps are parsed from newline-separated rows of '0' (free) / '1' (blocked).
// All indices are 0-based row-major; row 0 is the top row of the text form.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gridnav/errors.hpp"

namespace gridnav {

inline constexpr double kDefaultCellSizeCm = 60.96;  // 2 ft cells

struct Cell {
  int row = 0;
  int col = 0;

  bool operator==(const Cell& o) const { return row == o.row && col == o.col; }
  bool operator!=(const Cell& o) const { return !(*this == o); }
  bool operator<(const Cell& o) const {
    return row != o.row ? row < o.row : col < o.col;
  }
};

inline std::string to_string(const Cell& c) {
  return std::to_string(c.row) + "," + std::to_string(c.col);
}

// Canonical move table. Index is the move id everywhere in the stack.
inline constexpr int kForward = 0;   // (-1, 0)
inline constexpr int kLeft = 1;      // ( 0,-1)
inline constexpr int kBackward = 2;  // ( 1, 0)
inline constexpr int kRight = 3;     // ( 0, 1)

struct MoveDelta {
  int drow;
  int dcol;
};

inline constexpr std::array<MoveDelta, 4> kMoveTable{{
    {-1, 0},  // forward
    {0, -1},  // left
    {1, 0},   // backward
    {0, 1},   // right
}};

inline constexpr std::array<const char*, 4> kMoveNames{
    "forward", "left", "backward", "right"};

inline Cell apply_move(Cell c, int move_id) {
  return {c.row + kMoveTable[static_cast<size_t>(move_id)].drow,
          c.col + kMoveTable[static_cast<size_t>(move_id)].dcol};
}

inline int opposite_move(int move_id) { return (move_id + 2) % 4; }
// Clockwise rotation: forward -> right -> backward -> left.
inline int right_of(int move_id) { return (move_id + 3) % 4; }
inline int left_of(int move_id) { return (move_id + 1) % 4; }

struct GridMap {
  int rows = 0;
  int cols = 0;
  std::vector<uint8_t> occupancy;  // rows*cols, 0 = free, 1 = blocked
  double cell_size_cm = kDefaultCellSizeCm;

  bool in_bounds(Cell c) const {
    return c.row >= 0 && c.row < rows && c.col >= 0 && c.col < cols;
  }

  // Out-of-bounds cells read as blocked.
  bool is_free(Cell c) const {
    return in_bounds(c) && occupancy[static_cast<size_t>(c.row) * cols + c.col] == 0;
  }

  bool is_blocked(Cell c) const { return !is_free(c); }

  void set_blocked(Cell c, bool blocked) {
    occupancy[static_cast<size_t>(c.row) * cols + c.col] = blocked ? 1 : 0;
  }

  int cell_count() const { return rows * cols; }
};

inline GridMap parse_map(std::string_view text) {
  GridMap m;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) {
      if (m.rows == 0) {
        m.cols = static_cast<int>(line.size());
      } else if (static_cast<int>(line.size()) != m.cols) {
        throw ParseError("RaggedRows: map row " + std::to_string(m.rows + 1) +
                         " has length " + std::to_string(line.size()) +
                         ", expected " + std::to_string(m.cols));
      }
      for (char ch : line) {
        if (ch != '0' && ch != '1')
          throw ParseError(std::string("InvalidChar: '") + ch + "' in map row " +
                           std::to_string(m.rows + 1));
        m.occupancy.push_back(ch == '1' ? 1 : 0);
      }
      ++m.rows;
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (m.rows == 0) throw ParseError("EmptyMap: no map rows");
  return m;
}

inline std::string render_map(const GridMap& m) {
  std::string out;
  out.reserve(static_cast<size_t>(m.rows) * (m.cols + 1));
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c)
      out += m.occupancy[static_cast<size_t>(r) * m.cols + c] ? '1' : '0';
    out += '\n';
  }
  return out;
}

// In-bounds free neighbors of a cell, in move-table order.
inline std::vector<std::pair<int, Cell>> neighbors(const GridMap& m, Cell c) {
  if (!m.in_bounds(c))
    throw Error("OutOfBounds: cell " + to_string(c) + " outside " +
                std::to_string(m.rows) + "x" + std::to_string(m.cols) + " map");
  std::vector<std::pair<int, Cell>> out;
  out.reserve(4);
  for (int mv = 0; mv < 4; ++mv) {
    Cell n = apply_move(c, mv);
    if (m.is_free(n)) out.emplace_back(mv, n);
  }
  return out;
}

// Origin is the spawn cell and the tour's fixed start/end; the others must
// each be visited at least once.
struct KeyPointSet {
  Cell origin{};
  std::vector<Cell> others;

  int size() const { return 1 + static_cast<int>(others.size()); }

  Cell at(int i) const { return i == 0 ? origin : others[static_cast<size_t>(i - 1)]; }

  std::vector<Cell> cells() const {
    std::vector<Cell> out{origin};
    out.insert(out.end(), others.begin(), others.end());
    return out;
  }
};

inline void validate_keypoints(const GridMap& m, const KeyPointSet& kps) {
  auto cells = kps.cells();
  for (size_t i = 0; i < cells.size(); ++i) {
    const char* what = i == 0 ? "origin" : "key point";
    if (!m.in_bounds(cells[i]))
      throw ValidationError(std::string(what) + " " + to_string(cells[i]) +
                            " is outside the map");
    if (!m.is_free(cells[i]))
      throw ValidationError(std::string(what) + " " + to_string(cells[i]) +
                            " lies on a blocked cell");
    for (size_t j = i + 1; j < cells.size(); ++j)
      if (cells[i] == cells[j])
        throw ValidationError("duplicate key point " + to_string(cells[i]));
  }
}

}  // namespace gridnav
