#include "mcsim/mobility.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcsim/errors.h"

namespace mcsim {

namespace {

// Candidate x values are generated as k * step; allow for rounding at the end.
constexpr double kRangeSlack = 1e-9;
// Stopping point just outside the inner disc, where the outer band is kept.
constexpr double kBoundaryOffsetM = 1e-6;

}  // namespace

void LifetimeProfile::validate() const {
  if (!(x_max_m > 0.0)) throw InvalidParameter("mobility.x_max_m must be > 0");
  if (exponents.empty()) throw InvalidParameter("lifetime profile needs at least one area");
  for (double p : exponents) {
    if (!(p > 0.0) || !std::isfinite(p)) throw InvalidParameter("lifetime exponents must be > 0");
  }
}

double lifetime_factor(int area, double x_m, const LifetimeProfile& profile) {
  if (area < 1 || static_cast<std::size_t>(area) > profile.area_count()) {
    throw InvalidParameter("no lifetime shape for area " + std::to_string(area));
  }
  if (!(x_m >= 0.0) || x_m > profile.x_max_m * (1.0 + kRangeSlack)) {
    throw DomainError("move of " + std::to_string(x_m) + " m outside [0, x_max]");
  }
  const double t = std::min(x_m / profile.x_max_m, 1.0);
  return 1.0 - std::pow(t, profile.exponents[static_cast<std::size_t>(area - 1)]);
}

RegionPopulations RegionPopulations::count(std::span<const NodeState> nodes) {
  RegionPopulations pops;
  for (const NodeState& n : nodes) {
    if (n.band.is_inner()) {
      ++pops.inner;
    } else {
      ++pops.outer[static_cast<std::size_t>(n.band.color())];
    }
  }
  return pops;
}

int subcarrier_count(BandId band, const RegionPopulations& populations, const SpectrumPlan& plan) {
  const auto size = static_cast<int>(plan.band_size(band));
  const int pop = populations.of(band);
  if (size == 0) {
    if (pop > 0) throw InvalidParameter("band " + band.label() + " is empty but has nodes");
    throw InvalidParameter("band " + band.label() + " is empty");
  }
  return std::max(1, size / std::max(pop, 1));
}

CandidatePoint candidate_at(const NodeState& node, double x_m, const MobilityContext& ctx) {
  const CellLayout& layout = ctx.downlink.layout();
  const Cell& cell = layout.cell(node.serving_cell);
  CandidatePoint out;
  out.position = move_toward_bs(node.position, cell, x_m).position;
  out.distance_m = distance(out.position, cell.center);
  out.band = band_of_node(out.distance_m, layout.cell_radius(), ctx.scheme, cell);
  return out;
}

double move_limit(const NodeState& node, const MobilityContext& ctx) {
  const Cell& cell = ctx.downlink.layout().cell(node.serving_cell);
  return std::min(ctx.profile.x_max_m, distance(node.position, cell.center));
}

double sinr_gain(const NodeState& node, double x_m, const MobilityContext& ctx,
                 std::span<const double> shadow_row) {
  const CandidatePoint c = candidate_at(node, x_m, ctx);
  return ctx.downlink.sinr(node, c.position, c.band, shadow_row).sinr_linear;
}

double utility(const NodeState& node, double x_m, const MobilityContext& ctx,
               std::span<const double> shadow_row) {
  const double limit = move_limit(node, ctx);
  if (!(x_m >= 0.0) || x_m > limit + kRangeSlack * std::max(1.0, limit)) {
    throw DomainError("move of " + std::to_string(x_m) + " m outside [0, " +
                      std::to_string(limit) + "]");
  }
  const CandidatePoint c = candidate_at(node, x_m, ctx);
  const double sinr = ctx.downlink.sinr(node, c.position, c.band, shadow_row).sinr_linear;
  const double lifetime = lifetime_factor(node.area, std::min(x_m, ctx.profile.x_max_m), ctx.profile);
  const int subcarriers = subcarrier_count(c.band, ctx.populations, ctx.downlink.plan());
  return sinr * lifetime * subcarriers;
}

MoveOutcome optimize_move(const NodeState& node, const MobilityContext& ctx,
                          std::span<const double> shadow_row, double grid_step_m) {
  if (!(grid_step_m > 0.0)) throw InvalidParameter("mobility.grid_step_m must be > 0");
  const Cell& cell = ctx.downlink.layout().cell(node.serving_cell);
  const double initial = distance(node.position, cell.center);
  const double limit = move_limit(node, ctx);

  MoveOutcome out;
  UtilityCurve& curve = out.curve;
  curve.node_id = node.id;
  curve.clamped = initial < ctx.profile.x_max_m;
  for (long k = 0;; ++k) {
    const double x = static_cast<double>(k) * grid_step_m;
    if (x >= limit - kRangeSlack * std::max(1.0, limit)) break;
    curve.x_m.push_back(x);
  }
  curve.x_m.push_back(limit);
  // Breakpoints of the utility: the serving-link distance clamp and, under
  // partial reuse, the inner-band boundary.
  std::vector<double> breaks{initial - ctx.downlink.params().min_distance_m};
  if (ctx.scheme.is_partial()) {
    const double to_inner = initial - ctx.scheme.inner_radius_ratio() * ctx.downlink.layout().cell_radius();
    breaks.push_back(to_inner);
    breaks.push_back(to_inner - kBoundaryOffsetM);
  }
  for (double b : breaks) {
    if (b > 0.0 && b < limit) curve.x_m.push_back(b);
  }
  std::sort(curve.x_m.begin(), curve.x_m.end());
  curve.x_m.erase(std::unique(curve.x_m.begin(), curve.x_m.end()), curve.x_m.end());

  std::size_t best = 0;
  curve.utility.reserve(curve.x_m.size());
  for (std::size_t i = 0; i < curve.x_m.size(); ++i) {
    curve.utility.push_back(utility(node, curve.x_m[i], ctx, shadow_row));
    if (curve.utility[i] > curve.utility[best]) best = i;
  }
  curve.x_opt_m = curve.x_m[best];

  const CandidatePoint moved = candidate_at(node, curve.x_opt_m, ctx);
  MoveRecord& rec = out.record;
  rec.node_id = node.id;
  rec.area = node.area;
  rec.initial_distance_m = initial;
  rec.x_opt_m = curve.x_opt_m;
  rec.final_distance_m = std::max(0.0, initial - curve.x_opt_m);
  rec.normalized_move = curve.x_opt_m / ctx.profile.x_max_m;
  rec.band_before = band_of_node(initial, ctx.downlink.layout().cell_radius(), ctx.scheme, cell);
  rec.band_after = moved.band;

  out.final_state = node;
  out.final_state.position = moved.position;
  out.final_state.band = moved.band;
  out.final_state.moved_m = node.moved_m + curve.x_opt_m;
  return out;
}

}  // namespace mcsim
