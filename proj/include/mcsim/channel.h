#pragma once

#include <span>
#include <vector>

#include "mcsim/rng.h"

namespace mcsim {

/// Link-budget constants of the downlink.
struct ChannelParams {
  double intercept_db = 128.1;
  /// Distance exponent of the path loss (10 * 3.76 = 37.6 dB/decade).
  double pathloss_exponent = 3.76;
  double shadowing_sigma_db = 8.0;
  double noise_density_dbm_hz = -174.0;
  double bs_power_dbm = 43.0;
  double subcarrier_spacing_hz = 15000.0;
  /// Target bit error rate of the SNR-gap capacity formula.
  double ber = 1e-6;
  /// Path loss is evaluated no closer than this to a BS.
  double min_distance_m = 35.0;

  /// Throws InvalidParameter when an invariant is violated.
  void validate() const;
};

struct PathLoss {
  double db = 0.0;
  /// The distance was below min_distance_m and was raised to it.
  bool clamped = false;
};

/// intercept + 10 * exponent * log10(d / 1 km) + shadow.
PathLoss path_loss_db(double distance_m, double shadow_db, const ChannelParams& params);

/// Attenuation 10^(-PL/10); the received power is gain * transmit power.
double channel_gain_linear(double path_loss_db);

/// Frozen lognormal shadowing of one drop, one value per (node, cell) link.
///
/// Rows follow the node ids given at construction, columns follow the cell
/// ids, so `row(node)` lines up with `CellLayout::cells()` when the layout's
/// ids were passed in order.
class ShadowingField {
 public:
  ShadowingField() = default;
  ShadowingField(std::vector<int> node_ids, std::vector<int> cell_ids, std::vector<double> values);

  /// Throws ConsistencyError for a link that was never drawn.
  double at(int node_id, int cell_id) const;
  std::span<const double> row(int node_id) const;

  const std::vector<int>& node_ids() const { return node_ids_; }
  const std::vector<int>& cell_ids() const { return cell_ids_; }
  std::span<const double> values() const { return values_; }

 private:
  std::size_t node_row(int node_id) const;

  std::vector<int> node_ids_;
  std::vector<int> cell_ids_;
  std::vector<double> values_;
};

/// i.i.d. Normal(0, sigma^2) dB per link, drawn node-major.
ShadowingField draw_shadowing(std::span<const int> node_ids, std::span<const int> cell_ids,
                              double sigma_db, Rng& rng);

}  // namespace mcsim
