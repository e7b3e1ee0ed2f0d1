#pragma once

#include <array>
#include <span>
#include <vector>

#include "mcsim/link.h"
#include "mcsim/spectrum.h"

namespace mcsim {

/// Perceived remaining lifetime after a move of x meters:
/// L(x) = 1 - (x / x_max)^p, with one shape exponent p per area.
///
/// p > 1 keeps L near 1 for short moves and is used for cell-edge areas;
/// p < 1 drops quickly and is used near the center.
struct LifetimeProfile {
  double x_max_m = 400.0;
  std::vector<double> exponents;

  std::size_t area_count() const { return exponents.size(); }
  void validate() const;
};

/// Throws DomainError for x outside [0, x_max], InvalidParameter for an
/// unknown area.
double lifetime_factor(int area, double x_m, const LifetimeProfile& profile);

/// Node counts per band at the initial positions of a drop.
struct RegionPopulations {
  int inner = 0;
  std::array<int, kOuterBandCount> outer{};

  int of(BandId band) const {
    return band.is_inner() ? inner : outer[static_cast<std::size_t>(band.color())];
  }
  static RegionPopulations count(std::span<const NodeState> nodes);
};

/// Subcarriers a node can expect in `band`: floor(|band| / population),
/// at least 1. An empty population counts as the node alone.
int subcarrier_count(BandId band, const RegionPopulations& populations, const SpectrumPlan& plan);

/// Everything a node needs to score a candidate move.
struct MobilityContext {
  const Downlink& downlink;
  ReuseScheme scheme;
  const LifetimeProfile& profile;
  RegionPopulations populations;
};

/// Position after moving x meters toward the serving BS, and its band.
struct CandidatePoint {
  Point2D position;
  double distance_m = 0.0;
  BandId band = BandId::inner();
};

CandidatePoint candidate_at(const NodeState& node, double x_m, const MobilityContext& ctx);

/// Longest admissible move: min(x_max, distance to the serving BS).
double move_limit(const NodeState& node, const MobilityContext& ctx);

/// Linear SINR at the moved position; the band follows the new distance,
/// shadowing stays frozen.
double sinr_gain(const NodeState& node, double x_m, const MobilityContext& ctx,
                 std::span<const double> shadow_row);

/// U(x) = SINR(x) * L_area(x) * N(x).
double utility(const NodeState& node, double x_m, const MobilityContext& ctx,
               std::span<const double> shadow_row);

struct UtilityCurve {
  int node_id = 0;
  std::vector<double> x_m;
  std::vector<double> utility;
  double x_opt_m = 0.0;
  /// The BS was closer than x_max, so the search range stopped at it.
  bool clamped = false;
};

struct MoveRecord {
  int node_id = 0;
  int area = 1;
  double initial_distance_m = 0.0;
  double x_opt_m = 0.0;
  double final_distance_m = 0.0;
  /// x_opt / x_max
  double normalized_move = 0.0;
  BandId band_before = BandId::inner();
  BandId band_after = BandId::inner();
};

struct MoveOutcome {
  UtilityCurve curve;
  MoveRecord record;
  NodeState final_state;
};

/// Grid argmax of U over {0, step, 2 step, ..., move_limit}, plus the moves
/// that land exactly on the minimum coupling distance, on the inner-band
/// boundary, or 1 um outside it. The end point is always evaluated and ties go to the smallest x.
MoveOutcome optimize_move(const NodeState& node, const MobilityContext& ctx,
                          std::span<const double> shadow_row, double grid_step_m);

}  // namespace mcsim
