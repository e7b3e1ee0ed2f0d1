#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mcsim/geometry.h"

namespace mcsim {

/// FRF 1 everywhere, or an FRF-1 inner disc of radius ratio * R with the
/// remaining subcarriers split into three FRF-3 outer bands.
class ReuseScheme {
 public:
  enum class Kind { Full, Partial };

  static ReuseScheme full() { return ReuseScheme(Kind::Full, 1.0); }
  /// Throws InvalidParameter unless 0 < inner_radius_ratio < 1.
  static ReuseScheme partial(double inner_radius_ratio);

  Kind kind() const { return kind_; }
  bool is_partial() const { return kind_ == Kind::Partial; }
  double inner_radius_ratio() const { return inner_radius_ratio_; }

 private:
  ReuseScheme(Kind kind, double ratio) : kind_(kind), inner_radius_ratio_(ratio) {}

  Kind kind_;
  double inner_radius_ratio_;
};

/// The shared inner band or one of the three outer bands (by color).
class BandId {
 public:
  static constexpr BandId inner() { return BandId(-1); }
  static BandId outer(int color);

  bool is_inner() const { return value_ < 0; }
  /// Outer color 0..2; meaningless for the inner band.
  int color() const { return value_; }
  std::string label() const;

  friend bool operator==(BandId, BandId) = default;
  friend auto operator<=>(BandId, BandId) = default;

 private:
  constexpr explicit BandId(int v) : value_(v) {}
  int value_;
};

inline constexpr int kOuterBandCount = 3;

struct SpectrumPlan {
  int total_subcarriers = 0;
  std::vector<int> inner_band;
  std::array<std::vector<int>, kOuterBandCount> outer_bands;

  std::span<const int> band(BandId id) const;
  std::size_t band_size(BandId id) const { return band(id).size(); }
};

/// Inner band gets round(ratio^2 * M) subcarriers (all M under full reuse);
/// the rest is split three ways, larger shares to lower colors. Subcarrier
/// indices are contiguous: inner first, then outer bands by color.
SpectrumPlan build_plan(int total_subcarriers, const ReuseScheme& scheme);

/// Inner iff distance <= ratio * R under partial reuse; always inner under
/// full reuse. Outer nodes use the band of their cell's color.
BandId band_of_node(double distance_m, double cell_radius, const ReuseScheme& scheme,
                    const Cell& cell);

/// Cells other than `cell` that transmit on `band`: every cell for the inner
/// band, cells of the same color for an outer band. Sorted by id.
std::vector<int> interference_set(const Cell& cell, BandId band, const CellLayout& layout);

/// Per-node subcarrier sets of one band of one cell.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::map<int, std::vector<int>> by_node) : by_node_(std::move(by_node)) {}

  bool contains(int node_id) const { return by_node_.count(node_id) != 0; }
  /// Throws ConsistencyError if the node was not part of the allocation.
  const std::vector<int>& subcarriers(int node_id) const;
  const std::map<int, std::vector<int>>& by_node() const { return by_node_; }
  bool empty() const { return by_node_.empty(); }

  /// Adds another band's allocation; node sets must not overlap.
  void merge(const Allocation& other);

 private:
  std::map<int, std::vector<int>> by_node_;
};

/// Round-robin over nodes sorted by id: subcarrier j goes to node j mod n,
/// so every node gets floor or ceil of |band| / n, lower ids the ceil share.
Allocation allocate(std::span<const int> node_ids, std::span<const int> band);

}  // namespace mcsim
