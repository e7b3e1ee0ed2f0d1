#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "mcsim/rng.h"

namespace mcsim {

/// Position in meters; x grows east, y north.
struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

double distance(Point2D a, Point2D b);

/// One hexagonal cell site. `q`/`r` are its axial lattice coordinates.
struct Cell {
  int id = 0;
  Point2D center;
  int outer_color = 0;
  int q = 0;
  int r = 0;
};

/// Hexagonal rings of cells around the origin.
///
/// Cells are pointy-topped hexagons of circumradius `cell_radius`; adjacent
/// centers are sqrt(3) * cell_radius apart and the first neighbour lies on
/// the +x axis. Cell 1 is at the origin, ring k holds ids
/// 2 + 3k(k-1) .. 1 + 3k(k+1), walked counter-clockwise from the +x axis.
class CellLayout {
 public:
  CellLayout(std::vector<Cell> cells, double cell_radius, int rings);

  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  double cell_radius() const { return cell_radius_; }
  int rings() const { return rings_; }

  /// Lookup by id (1-based). Throws InvalidParameter for an unknown id.
  const Cell& cell(int id) const;
  /// Position of the cell in `cells()`.
  std::size_t index_of(int id) const;

  /// True when two cells share a hexagon edge.
  bool adjacent(int a, int b) const;

  std::vector<Cell>& mutable_cells() { return cells_; }

 private:
  std::vector<Cell> cells_;
  double cell_radius_;
  int rings_;
};

CellLayout build_layout(int rings, double cell_radius);

/// Colors from axial coordinates, (q - r) mod 3. Proper on the lattice
/// adjacency graph.
void assign_outer_colors(CellLayout& layout);

/// Nearest center; equidistant centers resolve to the lowest id.
int serving_cell(Point2D p, const CellLayout& layout);

/// Whether `p` lies in the closed hexagon of `cell`.
bool inside_hexagon(Point2D p, const Cell& cell, double cell_radius);

/// The six corners of a cell, counter-clockwise from the one on +y.
std::array<Point2D, 6> hexagon_vertices(const Cell& cell, double cell_radius);

/// Rejection sampling from the bounding box of the hexagon; a candidate is
/// kept when it lies in the hexagon and is served by `cell`.
Point2D sample_uniform_in_cell(const Cell& cell, const CellLayout& layout, Rng& rng);

/// Concentric annuli inside a cell, given by their outer radii.
class AreaPartition {
 public:
  explicit AreaPartition(std::vector<double> boundaries);

  /// Equal-width annuli: {R/n, 2R/n, ..., R}.
  static AreaPartition equal_width(double cell_radius, int count);

  /// 1-based annulus index. Intervals are [lo, hi) except the last one, which
  /// also contains its outer boundary. Throws OutOfCell beyond it.
  int area_index(double distance_m) const;

  std::size_t count() const { return boundaries_.size(); }
  std::span<const double> boundaries() const { return boundaries_; }

 private:
  std::vector<double> boundaries_;
};

struct RadialMove {
  Point2D position;
  /// The requested move was longer than the distance to the BS.
  bool clamped = false;
};

/// Move `x` meters along the straight line from `p` to the cell's BS.
RadialMove move_toward_bs(Point2D p, const Cell& cell, double x);

}  // namespace mcsim
