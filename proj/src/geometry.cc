#include "mcsim/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mcsim/errors.h"

namespace mcsim {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// Counter-clockwise axial directions starting with the +x neighbour.
constexpr std::array<std::array<int, 2>, 6> kAxialDirections = {{
    {1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};

Point2D axial_to_point(int q, int r, double radius) {
  return {radius * kSqrt3 * (q + 0.5 * r), radius * 1.5 * r};
}

int hex_norm(int q, int r) {
  return (std::abs(q) + std::abs(r) + std::abs(q + r)) / 2;
}

int positive_mod(int v, int m) { return ((v % m) + m) % m; }

}  // namespace

double distance(Point2D a, Point2D b) { return std::hypot(a.x - b.x, a.y - b.y); }

CellLayout::CellLayout(std::vector<Cell> cells, double cell_radius, int rings)
    : cells_(std::move(cells)), cell_radius_(cell_radius), rings_(rings) {}

const Cell& CellLayout::cell(int id) const { return cells_[index_of(id)]; }

std::size_t CellLayout::index_of(int id) const {
  // Ids are assigned densely from 1 by build_layout.
  if (id >= 1 && static_cast<std::size_t>(id) <= cells_.size() &&
      cells_[static_cast<std::size_t>(id - 1)].id == id) {
    return static_cast<std::size_t>(id - 1);
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].id == id) return i;
  }
  throw InvalidParameter("unknown cell id " + std::to_string(id));
}

bool CellLayout::adjacent(int a, int b) const {
  const Cell& ca = cell(a);
  const Cell& cb = cell(b);
  return hex_norm(ca.q - cb.q, ca.r - cb.r) == 1;
}

CellLayout build_layout(int rings, double cell_radius) {
  if (!(cell_radius > 0.0) || !std::isfinite(cell_radius)) {
    throw InvalidParameter("cell radius must be positive");
  }
  if (rings < 0) throw InvalidParameter("ring count must be non-negative");

  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(1 + 3 * rings * (rings + 1)));
  cells.push_back(Cell{1, {0.0, 0.0}, 0, 0, 0});
  for (int k = 1; k <= rings; ++k) {
    // Start on +x and walk the ring counter-clockwise; each side has k cells.
    int q = k;
    int r = 0;
    for (int side = 0; side < 6; ++side) {
      const auto& dir = kAxialDirections[static_cast<std::size_t>((side + 2) % 6)];
      for (int step = 0; step < k; ++step) {
        const int id = static_cast<int>(cells.size()) + 1;
        cells.push_back(Cell{id, axial_to_point(q, r, cell_radius), 0, q, r});
        q += dir[0];
        r += dir[1];
      }
    }
  }
  CellLayout layout(std::move(cells), cell_radius, rings);
  assign_outer_colors(layout);
  return layout;
}

void assign_outer_colors(CellLayout& layout) {
  for (Cell& c : layout.mutable_cells()) c.outer_color = positive_mod(c.q - c.r, 3);
}

int serving_cell(Point2D p, const CellLayout& layout) {
  int best_id = 0;
  double best = std::numeric_limits<double>::infinity();
  for (const Cell& c : layout.cells()) {
    const double dx = p.x - c.center.x;
    const double dy = p.y - c.center.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 < best || (d2 == best && c.id < best_id)) {
      best = d2;
      best_id = c.id;
    }
  }
  return best_id;
}

bool inside_hexagon(Point2D p, const Cell& cell, double cell_radius) {
  const double dx = std::abs(p.x - cell.center.x);
  const double dy = std::abs(p.y - cell.center.y);
  const double half_width = 0.5 * kSqrt3 * cell_radius;
  return dx <= half_width && dy <= cell_radius - dx / kSqrt3;
}

std::array<Point2D, 6> hexagon_vertices(const Cell& cell, double cell_radius) {
  std::array<Point2D, 6> out{};
  for (std::size_t i = 0; i < 6; ++i) {
    const double angle = (90.0 + 60.0 * static_cast<double>(i)) * std::numbers::pi / 180.0;
    out[i] = {cell.center.x + cell_radius * std::cos(angle),
              cell.center.y + cell_radius * std::sin(angle)};
  }
  return out;
}

Point2D sample_uniform_in_cell(const Cell& cell, const CellLayout& layout, Rng& rng) {
  const double radius = layout.cell_radius();
  for (;;) {
    const Point2D p{rng.uniform(cell.center.x - radius, cell.center.x + radius),
                    rng.uniform(cell.center.y - radius, cell.center.y + radius)};
    if (inside_hexagon(p, cell, radius) && serving_cell(p, layout) == cell.id) return p;
  }
}

AreaPartition::AreaPartition(std::vector<double> boundaries)
    : boundaries_(std::move(boundaries)) {
  if (boundaries_.empty()) throw InvalidParameter("area partition needs a boundary");
  double prev = 0.0;
  for (double b : boundaries_) {
    if (!(b > prev)) throw InvalidParameter("area boundaries must be strictly increasing");
    prev = b;
  }
}

AreaPartition AreaPartition::equal_width(double cell_radius, int count) {
  if (count < 1) throw InvalidParameter("area count must be positive");
  std::vector<double> b;
  for (int i = 1; i <= count; ++i) b.push_back(cell_radius * i / count);
  return AreaPartition(std::move(b));
}

int AreaPartition::area_index(double distance_m) const {
  if (!(distance_m >= 0.0)) throw InvalidParameter("distance must be non-negative");
  if (distance_m > boundaries_.back()) {
    throw OutOfCell("distance " + std::to_string(distance_m) + " m beyond last area boundary");
  }
  const auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), distance_m);
  const auto idx = static_cast<int>(it - boundaries_.begin()) + 1;
  return std::min(idx, static_cast<int>(boundaries_.size()));
}

RadialMove move_toward_bs(Point2D p, const Cell& cell, double x) {
  if (x < 0.0) throw InvalidParameter("move distance must be non-negative");
  const double d = distance(p, cell.center);
  if (x >= d) return {cell.center, x > d};
  const double f = x / d;
  return {{p.x + (cell.center.x - p.x) * f, p.y + (cell.center.y - p.y) * f}, false};
}

}  // namespace mcsim
