#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "mcsim/errors.h"
#include "mcsim/geometry.h"
#include "test_support.h"

using namespace mcsim;
using mcsim::testing::kSqrt3;

TEST_CASE("build_layout produces 37 cells in three rings") {
  const CellLayout layout = build_layout(3, 1000.0);
  CHECK(layout.size() == 37);
  CHECK(layout.cell(1).center == Point2D{0.0, 0.0});

  std::set<int> ids;
  for (const Cell& c : layout.cells()) ids.insert(c.id);
  CHECK(ids.size() == 37);
  CHECK(*ids.begin() == 1);
  CHECK(*ids.rbegin() == 37);
}

TEST_CASE("single-cell layout") {
  const CellLayout layout = build_layout(0, 1000.0);
  REQUIRE(layout.size() == 1);
  CHECK(layout.cells()[0].id == 1);
  CHECK(layout.cells()[0].center == Point2D{0.0, 0.0});
}

TEST_CASE("cell count is 1 + 3k(k+1)") {
  for (int rings = 0; rings <= 6; ++rings) {
    int expected = 1;
    for (int r = 1; r <= rings; ++r) expected += 6 * r;
    CHECK(build_layout(rings, 500.0).size() == static_cast<std::size_t>(expected));
  }
}

TEST_CASE("non-positive radius is rejected") {
  CHECK_THROWS_AS(build_layout(3, 0.0), InvalidParameter);
  CHECK_THROWS_AS(build_layout(3, -5.0), InvalidParameter);
  CHECK_THROWS_AS(build_layout(-1, 1000.0), InvalidParameter);
}

TEST_CASE("ring-1 centers sit at sqrt(3) R") {
  const CellLayout layout = build_layout(3, 1000.0);
  // Explicit construction: six neighbours at 60 degree spacing starting on +x.
  std::vector<Point2D> expected;
  for (int k = 0; k < 6; ++k) {
    const double a = k * std::numbers::pi / 3.0;
    expected.push_back({1000.0 * kSqrt3 * std::cos(a), 1000.0 * kSqrt3 * std::sin(a)});
  }
  for (int id = 2; id <= 7; ++id) {
    const Point2D c = layout.cell(id).center;
    CHECK(distance(c, {0, 0}) == doctest::Approx(1732.05).epsilon(1e-6));
    const bool found = std::any_of(expected.begin(), expected.end(),
                                   [&](Point2D e) { return distance(e, c) < 1e-6; });
    CHECK(found);
  }
}

TEST_CASE("every cell has its nearest neighbours at sqrt(3) R") {
  const CellLayout layout = build_layout(3, 1000.0);
  for (const Cell& a : layout.cells()) {
    double nearest = 1e18;
    for (const Cell& b : layout.cells()) {
      if (a.id != b.id) nearest = std::min(nearest, distance(a.center, b.center));
    }
    CHECK(nearest == doctest::Approx(1000.0 * kSqrt3));
  }
}

TEST_CASE("serving_cell examples") {
  const CellLayout layout = build_layout(3, 1000.0);
  CHECK(serving_cell({0.0, 0.0}, layout) == 1);
  const int east = serving_cell({1732.05, 0.0}, layout);
  CHECK(east != 1);
  CHECK(distance(layout.cell(east).center, {1732.05, 0.0}) < 0.01);
  // Exact midpoint between cell 1 and that neighbour: tie goes to the lower id.
  const Point2D mid{layout.cell(east).center.x / 2.0, 0.0};
  CHECK(distance(mid, layout.cell(1).center) == distance(mid, layout.cell(east).center));
  CHECK(serving_cell(mid, layout) == 1);
}

TEST_CASE("hexagon membership matches nearest-center classification inside the layout") {
  const CellLayout layout = build_layout(3, 1000.0);
  Rng rng(11);
  int checked = 0;
  for (int i = 0; i < 20000; ++i) {
    const Point2D p{rng.uniform(-2500, 2500), rng.uniform(-2500, 2500)};
    const int id = serving_cell(p, layout);
    // Cells of rings 0..1 are fully surrounded, so their Voronoi region is the hexagon.
    if (id > 7) continue;
    CHECK(inside_hexagon(p, layout.cell(id), 1000.0));
    ++checked;
  }
  CHECK(checked > 5000);
}

TEST_CASE("sample_uniform_in_cell") {
  const CellLayout layout = build_layout(3, 1000.0);
  const Cell& home = layout.cell(1);
  Rng rng(2024);
  const int n = 100000;
  double sx = 0, sy = 0;
  int inside_disc = 0;
  bool all_served = true;
  for (int i = 0; i < n; ++i) {
    const Point2D p = sample_uniform_in_cell(home, layout, rng);
    sx += p.x;
    sy += p.y;
    all_served = all_served && serving_cell(p, layout) == 1;
    if (distance(p, home.center) < 467.0) ++inside_disc;
  }
  CHECK(all_served);
  CHECK(std::hypot(sx / n, sy / n) < 20.0);
  // Area of the 467 m disc over the hexagon area (3 sqrt(3)/2 R^2).
  const double oracle = std::numbers::pi * 0.467 * 0.467 / (1.5 * kSqrt3);
  CHECK(oracle == doctest::Approx(0.264).epsilon(0.01));
  CHECK(std::abs(static_cast<double>(inside_disc) / n - oracle) < 0.01);
}

TEST_CASE("area_index uses half-open annuli") {
  const AreaPartition areas({250, 500, 750, 1000});
  CHECK(areas.area_index(0.0) == 1);
  CHECK(areas.area_index(900.0) == 4);
  CHECK(areas.area_index(250.0) == 2);
  CHECK(areas.area_index(249.999) == 1);
  CHECK(areas.area_index(1000.0) == 4);
  CHECK_THROWS_AS(areas.area_index(1000.5), OutOfCell);
  CHECK_THROWS_AS(AreaPartition({500, 250}), InvalidParameter);
  CHECK(AreaPartition::equal_width(1000.0, 4).boundaries()[0] == 250.0);
}

TEST_CASE("move_toward_bs") {
  const CellLayout layout = build_layout(3, 1000.0);
  const Cell& home = layout.cell(1);
  const Point2D p{800.0 * std::cos(0.3), 800.0 * std::sin(0.3)};

  const RadialMove stay = move_toward_bs(p, home, 0.0);
  CHECK(stay.position == p);
  CHECK_FALSE(stay.clamped);

  const RadialMove half = move_toward_bs(p, home, 400.0);
  CHECK(distance(half.position, home.center) == doctest::Approx(400.0));
  // Collinear with the original ray.
  CHECK(std::atan2(half.position.y, half.position.x) == doctest::Approx(0.3));
  CHECK_FALSE(half.clamped);

  const Point2D q{300.0, 0.0};
  const RadialMove over = move_toward_bs(q, home, 400.0);
  CHECK(over.position == home.center);
  CHECK(over.clamped);
}

TEST_CASE("property: longer moves never end farther from the BS") {
  const CellLayout layout = build_layout(3, 1000.0);
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const Point2D p = sample_uniform_in_cell(layout.cell(1), layout, rng);
    const double d = distance(p, {0, 0});
    double x1 = rng.uniform(0, d);
    double x2 = rng.uniform(0, d);
    if (x1 > x2) std::swap(x1, x2);
    const double d1 = distance(move_toward_bs(p, layout.cell(1), x1).position, {0, 0});
    const double d2 = distance(move_toward_bs(p, layout.cell(1), x2).position, {0, 0});
    CHECK(d2 <= d1 + 1e-9);
    CHECK(d1 == doctest::Approx(d - x1));
  }
}

TEST_CASE("outer colors form a proper 3-coloring") {
  const CellLayout layout = build_layout(3, 1000.0);
  // Adjacency from geometry, independent of the lattice coordinates.
  for (const Cell& a : layout.cells()) {
    for (const Cell& b : layout.cells()) {
      if (a.id >= b.id) continue;
      const bool touching = std::abs(distance(a.center, b.center) - 1000.0 * kSqrt3) < 1e-6;
      CHECK(touching == layout.adjacent(a.id, b.id));
      if (touching) CHECK(a.outer_color != b.outer_color);
    }
  }
  const int c1 = layout.cell(1).outer_color;
  for (int id = 2; id <= 7; ++id) CHECK(layout.cell(id).outer_color != c1);

  std::map<int, int> sizes;
  for (const Cell& c : layout.cells()) ++sizes[c.outer_color];
  REQUIRE(sizes.size() == 3);
  CHECK(sizes[c1] == 13);
  std::vector<int> counts;
  for (auto [color, n] : sizes) counts.push_back(n);
  std::sort(counts.begin(), counts.end());
  CHECK(counts == std::vector<int>{12, 12, 13});
}

TEST_CASE("class sizes by explicit lattice enumeration") {
  // Enumerate axial coordinates of hex distance <= 3 and color them directly.
  std::map<int, int> sizes;
  for (int q = -3; q <= 3; ++q) {
    for (int r = -3; r <= 3; ++r) {
      if (std::max({std::abs(q), std::abs(r), std::abs(q + r)}) > 3) continue;
      ++sizes[(((q - r) % 3) + 3) % 3];
    }
  }
  CHECK(sizes[0] == 13);
  CHECK(sizes[1] == 12);
  CHECK(sizes[2] == 12);
}
