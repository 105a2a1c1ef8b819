#pragma once

#include <cmath>
#include <compare>
#include <cstdlib>

namespace rde {

/// Integer grid coordinate. x is the column, y the row.
struct Cell {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline double euclidean_distance(Cell a, Cell b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// Length of a shortest 8-connected path on an obstacle-free grid:
/// diagonal moves cost sqrt(2), straight moves cost 1.
inline double octile_distance(Cell a, Cell b) {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  const int diag = dx < dy ? dx : dy;
  const int straight = (dx < dy ? dy : dx) - diag;
  return straight + diag * std::sqrt(2.0);
}

inline bool adjacent8(Cell a, Cell b) {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  return (dx | dy) != 0 && dx <= 1 && dy <= 1;
}

}  // namespace rde
