#include "mcsim/link.h"

#include <cmath>
#include <string>

#include "mcsim/errors.h"

namespace mcsim {

double dbm_to_w(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double w_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
double to_db(double linear) { return 10.0 * std::log10(linear); }

double per_subcarrier_power_w(double bs_power_dbm, int total_subcarriers) {
  if (total_subcarriers < 1) throw InvalidParameter("subcarrier count must be positive");
  return dbm_to_w(bs_power_dbm) / total_subcarriers;
}

double noise_power_w(double noise_density_dbm_hz, double subcarrier_spacing_hz) {
  if (!(subcarrier_spacing_hz > 0.0)) throw InvalidParameter("subcarrier spacing must be positive");
  return dbm_to_w(noise_density_dbm_hz) * subcarrier_spacing_hz;
}

double snr_gap(double ber) {
  if (!(ber > 0.0 && ber < 0.2)) throw InvalidParameter("BER must lie in (0, 0.2)");
  return -1.5 / std::log(5.0 * ber);
}

LinkBudget LinkBudget::from(const ChannelParams& params, int total_subcarriers) {
  return {mcsim::per_subcarrier_power_w(params.bs_power_dbm, total_subcarriers),
          mcsim::noise_power_w(params.noise_density_dbm_hz, params.subcarrier_spacing_hz)};
}

Downlink::Downlink(CellLayout layout, SpectrumPlan plan, ChannelParams params)
    : layout_(std::move(layout)),
      plan_(std::move(plan)),
      params_(params),
      budget_(LinkBudget::from(params_, plan_.total_subcarriers)) {
  params_.validate();
  interferers_.resize(layout_.size());
  for (std::size_t i = 0; i < layout_.size(); ++i) {
    const Cell& cell = layout_.cells()[i];
    interferers_[i][0] = {};
    for (const int id : interference_set(cell, BandId::inner(), layout_)) {
      interferers_[i][0].push_back(layout_.index_of(id));
    }
    for (int c = 0; c < kOuterBandCount; ++c) {
      auto& slot = interferers_[i][static_cast<std::size_t>(1 + c)];
      for (const int id : interference_set(cell, BandId::outer(c), layout_)) {
        slot.push_back(layout_.index_of(id));
      }
    }
  }
}

std::vector<int> Downlink::interferers(int cell_id, BandId band) const {
  std::vector<int> out;
  for (std::size_t idx : interferers_[layout_.index_of(cell_id)][band_slot(band)]) {
    out.push_back(layout_.cells()[idx].id);
  }
  return out;
}

SinrSample Downlink::sinr(const NodeState& node, Point2D position, BandId band,
                          std::span<const double> shadow_row) const {
  if (shadow_row.size() != layout_.size()) {
    throw ConsistencyError("shadowing row of node " + std::to_string(node.id) + " has " +
                           std::to_string(shadow_row.size()) + " entries, layout has " +
                           std::to_string(layout_.size()) + " cells");
  }
  const std::size_t serving = layout_.index_of(node.serving_cell);
  const Cell& serving_cell = layout_.cells()[serving];
  if (!band.is_inner() && band.color() != serving_cell.outer_color) {
    throw InvalidParameter("cell " + std::to_string(node.serving_cell) + " does not transmit on " +
                           band.label());
  }
  if (plan_.band_size(band) == 0) {
    throw InvalidParameter("band " + band.label() + " has no subcarriers in this plan");
  }

  const auto received = [&](std::size_t idx) {
    const double d = distance(position, layout_.cells()[idx].center);
    return channel_gain_linear(path_loss_db(d, shadow_row[idx], params_).db) *
           budget_.per_subcarrier_power_w;
  };

  double interference = 0.0;
  for (std::size_t idx : interferers_[serving][band_slot(band)]) interference += received(idx);

  SinrSample out;
  out.node_id = node.id;
  out.distance_m = distance(position, serving_cell.center);
  out.band = band;
  out.sinr_linear = received(serving) / (budget_.noise_power_w + interference);
  out.sinr_db = to_db(out.sinr_linear);
  return out;
}

SinrSample Downlink::sinr(const NodeState& node, Point2D position, BandId band,
                          const ShadowingField& shadowing) const {
  if (shadowing.cell_ids().size() != layout_.size()) {
    throw ConsistencyError("shadowing field does not cover every cell of the layout");
  }
  for (std::size_t i = 0; i < layout_.size(); ++i) {
    if (shadowing.cell_ids()[i] != layout_.cells()[i].id) {
      throw ConsistencyError("shadowing field cell order differs from the layout");
    }
  }
  return sinr(node, position, band, shadowing.row(node.id));
}

double capacity_per_subcarrier(double sinr_linear, const ChannelParams& params) {
  if (!(sinr_linear >= 0.0)) throw InvalidParameter("SINR must be non-negative");
  return params.subcarrier_spacing_hz * std::log2(1.0 + snr_gap(params.ber) * sinr_linear);
}

CapacityRecord node_capacity(int node_id, const Allocation& allocation, const SinrSample& sinr,
                             const ChannelParams& params) {
  const auto count = static_cast<int>(allocation.subcarriers(node_id).size());
  return {node_id, count, count * capacity_per_subcarrier(sinr.sinr_linear, params)};
}

}  // namespace mcsim
