#pragma once

#include <cmath>
#include <vector>

#include "mcsim/channel.h"
#include "mcsim/geometry.h"

namespace mcsim::testing {

inline constexpr double kSqrt3 = 1.7320508075688772;

/// Received power in watts from the textbook link budget, written out
/// independently of the library's path-loss / gain helpers.
inline double brute_received_w(double distance_m, double shadow_db, double p_tx_dbm_per_sc,
                               const ChannelParams& p) {
  const double d_km = std::max(distance_m, p.min_distance_m) / 1000.0;
  const double pl = p.intercept_db + 10.0 * p.pathloss_exponent * std::log10(d_km) + shadow_db;
  return std::pow(10.0, (p_tx_dbm_per_sc - pl - 30.0) / 10.0);
}

inline double per_sc_dbm(const ChannelParams& p, int m) {
  return p.bs_power_dbm - 10.0 * std::log10(static_cast<double>(m));
}

/// Point at `distance` from cell 1's center towards its +y vertex.
inline Point2D on_vertex_ray(double distance) { return {0.0, distance}; }

}  // namespace mcsim::testing
