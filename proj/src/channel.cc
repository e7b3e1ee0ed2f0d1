#include "mcsim/channel.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcsim/errors.h"

namespace mcsim {

void ChannelParams::validate() const {
  if (!(pathloss_exponent > 0.0)) throw InvalidParameter("channel.pathloss_exponent must be > 0");
  if (!(shadowing_sigma_db >= 0.0)) throw InvalidParameter("channel.shadowing_sigma_db must be >= 0");
  if (!(subcarrier_spacing_hz > 0.0)) throw InvalidParameter("spectrum.spacing_hz must be > 0");
  if (!(ber > 0.0 && ber < 0.2)) throw InvalidParameter("link.ber must lie in (0, 0.2)");
  if (!(min_distance_m > 0.0)) throw InvalidParameter("minimum coupling distance must be > 0");
  for (double v : {intercept_db, noise_density_dbm_hz, bs_power_dbm}) {
    if (!std::isfinite(v)) throw InvalidParameter("channel parameters must be finite");
  }
}

PathLoss path_loss_db(double distance_m, double shadow_db, const ChannelParams& params) {
  PathLoss out;
  double d = distance_m;
  if (!(d >= params.min_distance_m)) {
    d = params.min_distance_m;
    out.clamped = true;
  }
  out.db = params.intercept_db + 10.0 * params.pathloss_exponent * std::log10(d / 1000.0) +
           shadow_db;
  return out;
}

double channel_gain_linear(double path_loss_db) { return std::pow(10.0, -path_loss_db / 10.0); }

ShadowingField::ShadowingField(std::vector<int> node_ids, std::vector<int> cell_ids,
                               std::vector<double> values)
    : node_ids_(std::move(node_ids)), cell_ids_(std::move(cell_ids)), values_(std::move(values)) {
  if (values_.size() != node_ids_.size() * cell_ids_.size()) {
    throw ConsistencyError("shadowing field size does not match node x cell count");
  }
}

std::size_t ShadowingField::node_row(int node_id) const {
  const auto it = std::find(node_ids_.begin(), node_ids_.end(), node_id);
  if (it == node_ids_.end()) {
    throw ConsistencyError("no shadowing drawn for node " + std::to_string(node_id));
  }
  return static_cast<std::size_t>(it - node_ids_.begin());
}

double ShadowingField::at(int node_id, int cell_id) const {
  const std::size_t row_index = node_row(node_id);
  const auto it = std::find(cell_ids_.begin(), cell_ids_.end(), cell_id);
  if (it == cell_ids_.end()) {
    throw ConsistencyError("no shadowing drawn for cell " + std::to_string(cell_id));
  }
  return values_[row_index * cell_ids_.size() + static_cast<std::size_t>(it - cell_ids_.begin())];
}

std::span<const double> ShadowingField::row(int node_id) const {
  return std::span<const double>(values_).subspan(node_row(node_id) * cell_ids_.size(),
                                                  cell_ids_.size());
}

ShadowingField draw_shadowing(std::span<const int> node_ids, std::span<const int> cell_ids,
                              double sigma_db, Rng& rng) {
  if (!(sigma_db >= 0.0)) throw InvalidParameter("shadowing sigma must be >= 0");
  std::vector<double> values(node_ids.size() * cell_ids.size(), 0.0);
  if (sigma_db > 0.0) {
    for (double& v : values) v = rng.normal(0.0, sigma_db);
  }
  return ShadowingField({node_ids.begin(), node_ids.end()}, {cell_ids.begin(), cell_ids.end()},
                        std::move(values));
}

}  // namespace mcsim
