#pragma once

#include <array>
#include <span>
#include <vector>

#include "mcsim/channel.h"
#include "mcsim/geometry.h"
#include "mcsim/spectrum.h"

namespace mcsim {

/// BS power on one subcarrier when the total is split evenly over M.
double per_subcarrier_power_w(double bs_power_dbm, int total_subcarriers);
/// N0 * f_s in watts.
double noise_power_w(double noise_density_dbm_hz, double subcarrier_spacing_hz);
/// SNR gap of an uncoded M-QAM link at the given BER: -1.5 / ln(5 BER).
double snr_gap(double ber);

double dbm_to_w(double dbm);
double w_to_dbm(double w);
double to_db(double linear);

struct LinkBudget {
  double per_subcarrier_power_w = 0.0;
  double noise_power_w = 0.0;

  static LinkBudget from(const ChannelParams& params, int total_subcarriers);
};

/// A mobile node of the measured cell.
struct NodeState {
  int id = 0;
  Point2D position;
  int serving_cell = 1;
  /// 1-based lifetime area, fixed at the initial position.
  int area = 1;
  BandId band = BandId::inner();
  double moved_m = 0.0;
};

struct SinrSample {
  int node_id = 0;
  double distance_m = 0.0;
  BandId band = BandId::inner();
  double sinr_linear = 0.0;
  double sinr_db = 0.0;
};

struct CapacityRecord {
  int node_id = 0;
  int subcarrier_count = 0;
  double capacity_bps = 0.0;
};

/// Downlink SINR evaluator for one layout and spectrum plan.
///
/// The channel is flat over a band, so a (position, band) pair has one SINR
/// for all its subcarriers. Every BS transmits at full per-subcarrier power
/// on each band it owns. Interference sets are resolved once at construction.
class Downlink {
 public:
  Downlink(CellLayout layout, SpectrumPlan plan, ChannelParams params);

  const CellLayout& layout() const { return layout_; }
  const SpectrumPlan& plan() const { return plan_; }
  const ChannelParams& params() const { return params_; }
  const LinkBudget& budget() const { return budget_; }

  /// Ids of the cells co-channel with `cell_id` on `band`.
  std::vector<int> interferers(int cell_id, BandId band) const;

  /// `shadow_row` holds one value per cell in layout order; a shorter row is
  /// a ConsistencyError. Throws InvalidParameter if the serving cell does not
  /// transmit on `band`.
  SinrSample sinr(const NodeState& node, Point2D position, BandId band,
                  std::span<const double> shadow_row) const;
  SinrSample sinr(const NodeState& node, Point2D position, BandId band,
                  const ShadowingField& shadowing) const;

 private:
  std::size_t band_slot(BandId band) const { return band.is_inner() ? 0 : 1 + band.color(); }

  CellLayout layout_;
  SpectrumPlan plan_;
  ChannelParams params_;
  LinkBudget budget_;
  // [cell index][band slot] -> interferer cell indices.
  std::vector<std::array<std::vector<std::size_t>, 1 + kOuterBandCount>> interferers_;
};

/// f_s * log2(1 + beta * SINR).
double capacity_per_subcarrier(double sinr_linear, const ChannelParams& params);

/// |allocation(node)| * capacity_per_subcarrier. Throws ConsistencyError when
/// the node has no entry in the allocation.
CapacityRecord node_capacity(int node_id, const Allocation& allocation, const SinrSample& sinr,
                             const ChannelParams& params);

}  // namespace mcsim
