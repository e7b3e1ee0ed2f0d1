#include "mcsim/spectrum.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mcsim/errors.h"

namespace mcsim {

ReuseScheme ReuseScheme::partial(double inner_radius_ratio) {
  if (!(inner_radius_ratio > 0.0 && inner_radius_ratio < 1.0)) {
    throw InvalidParameter("inner radius ratio must lie in (0, 1)");
  }
  return ReuseScheme(Kind::Partial, inner_radius_ratio);
}

BandId BandId::outer(int color) {
  if (color < 0 || color >= kOuterBandCount) throw InvalidParameter("outer band color must be 0..2");
  return BandId(color);
}

std::string BandId::label() const {
  return is_inner() ? std::string("inner") : "outer" + std::to_string(value_);
}

std::span<const int> SpectrumPlan::band(BandId id) const {
  if (id.is_inner()) return inner_band;
  return outer_bands[static_cast<std::size_t>(id.color())];
}

SpectrumPlan build_plan(int total_subcarriers, const ReuseScheme& scheme) {
  if (total_subcarriers < 1) throw InvalidParameter("subcarrier count must be positive");
  SpectrumPlan plan;
  plan.total_subcarriers = total_subcarriers;

  int inner_size = total_subcarriers;
  if (scheme.is_partial()) {
    if (total_subcarriers < 4) throw InvalidParameter("partial reuse needs at least 4 subcarriers");
    const double ratio = scheme.inner_radius_ratio();
    inner_size = static_cast<int>(std::lround(ratio * ratio * total_subcarriers));
  }
  plan.inner_band.resize(static_cast<std::size_t>(inner_size));
  std::iota(plan.inner_band.begin(), plan.inner_band.end(), 0);

  const int remainder = total_subcarriers - inner_size;
  int next = inner_size;
  for (int c = 0; c < kOuterBandCount; ++c) {
    const int size = remainder / kOuterBandCount + (c < remainder % kOuterBandCount ? 1 : 0);
    auto& band = plan.outer_bands[static_cast<std::size_t>(c)];
    band.resize(static_cast<std::size_t>(size));
    std::iota(band.begin(), band.end(), next);
    next += size;
  }
  return plan;
}

BandId band_of_node(double distance_m, double cell_radius, const ReuseScheme& scheme,
                    const Cell& cell) {
  if (!scheme.is_partial()) return BandId::inner();
  if (distance_m <= scheme.inner_radius_ratio() * cell_radius) return BandId::inner();
  return BandId::outer(cell.outer_color);
}

std::vector<int> interference_set(const Cell& cell, BandId band, const CellLayout& layout) {
  std::vector<int> out;
  for (const Cell& other : layout.cells()) {
    if (other.id == cell.id) continue;
    if (band.is_inner() || other.outer_color == band.color()) out.push_back(other.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<int>& Allocation::subcarriers(int node_id) const {
  const auto it = by_node_.find(node_id);
  if (it == by_node_.end()) {
    throw ConsistencyError("node " + std::to_string(node_id) + " has no allocation");
  }
  return it->second;
}

void Allocation::merge(const Allocation& other) {
  for (const auto& [id, set] : other.by_node_) {
    if (!by_node_.emplace(id, set).second) {
      throw ConsistencyError("node " + std::to_string(id) + " allocated twice");
    }
  }
}

Allocation allocate(std::span<const int> node_ids, std::span<const int> band) {
  if (node_ids.empty()) return {};
  if (band.empty()) throw InvalidParameter("cannot allocate an empty band to nodes");
  std::vector<int> nodes(node_ids.begin(), node_ids.end());
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
    throw InvalidParameter("duplicate node id in allocation request");
  }
  std::map<int, std::vector<int>> by_node;
  for (int id : nodes) by_node[id];
  for (std::size_t j = 0; j < band.size(); ++j) {
    by_node[nodes[j % nodes.size()]].push_back(band[j]);
  }
  return Allocation(std::move(by_node));
}

}  // namespace mcsim
