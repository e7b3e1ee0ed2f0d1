#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcsim/channel.h"
#include "mcsim/geometry.h"
#include "mcsim/link.h"
#include "mcsim/mobility.h"
#include "mcsim/pfr_opt.h"
#include "mcsim/spectrum.h"

namespace mcsim {

/// frf1: full reuse; pfr: partial reuse; mc-*: the same plus mobility control.
enum class Scheme { Frf1, Pfr, McFrf1, McPfr };

inline constexpr Scheme kAllSchemes[] = {Scheme::Frf1, Scheme::Pfr, Scheme::McFrf1, Scheme::McPfr};

std::string_view scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);
bool is_mobile(Scheme scheme);
bool uses_partial_reuse(Scheme scheme);

struct SimConfig {
  ChannelParams channel;
  double cell_radius_m = 1000.0;
  int rings = 3;
  int subcarriers = 300;
  double pfr_alpha = 0.467;
  int nodes = 30;
  int trials = 50;
  std::uint64_t seed = 1;

  double x_max_m = 400.0;
  double grid_step_m = 1.0;
  /// One shape per FRF-1 area, innermost first.
  std::vector<double> lifetime_exponents{0.5, 1.0, 4.0, 16.0};
  std::vector<double> area_boundaries_m{250.0, 500.0, 750.0, 1000.0};
  /// FRF-1 areas whose shapes the PFR inner and outer regions reuse.
  std::vector<int> pfr_profile_areas{2, 4};

  double edge_threshold_db = 0.0;
  std::vector<int> edge_node_counts{5, 10, 15, 20, 25, 30, 35, 40, 45, 50};

  int alpha_samples = 10000;
  double alpha_grid_step = 0.001;
  SinrDomain alpha_domain = SinrDomain::Decibel;
  bool alpha_include_shadowing = false;

  /// Worker threads for trials; 0 means hardware concurrency.
  int threads = 0;

  void validate() const;
};

/// Full-precision key=value rendering of every field, in a fixed order.
std::string canonical_config_text(const SimConfig& config);
/// 64-bit FNV-1a of canonical_config_text.
std::uint64_t config_hash(const SimConfig& config);

/// Layout, plans, evaluators and profiles derived once from a config.
class Scenario {
 public:
  explicit Scenario(SimConfig config);

  const SimConfig& config() const { return config_; }
  const CellLayout& layout() const { return layout_; }
  const Downlink& downlink(Scheme scheme) const {
    return uses_partial_reuse(scheme) ? pfr_ : frf1_;
  }
  ReuseScheme reuse(Scheme scheme) const {
    return uses_partial_reuse(scheme) ? ReuseScheme::partial(config_.pfr_alpha) : ReuseScheme::full();
  }
  const LifetimeProfile& profile(Scheme scheme) const {
    return uses_partial_reuse(scheme) ? pfr_profile_ : frf1_profile_;
  }
  const AreaPartition& frf1_areas() const { return frf1_areas_; }

  /// Lifetime area of a node: FRF-1 annulus, or 1 / 2 for PFR inner / outer.
  int area_of(Scheme scheme, double distance_m, BandId band) const;

 private:
  SimConfig config_;
  CellLayout layout_;
  Downlink frf1_;
  Downlink pfr_;
  AreaPartition frf1_areas_;
  LifetimeProfile frf1_profile_;
  LifetimeProfile pfr_profile_;
};

/// Node positions and frozen shadowing of one random drop. Drawn from the
/// trial seed only, so every scheme sees the same drop.
struct Drop {
  std::vector<Point2D> positions;
  ShadowingField shadowing;
};

Drop draw_drop(const Scenario& scenario, int node_count, std::uint64_t trial_seed);

struct TrialResult {
  int trial_index = 0;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::Frf1;
  std::vector<NodeState> initial_nodes;
  /// Before any move, under the scheme's reuse plan.
  std::vector<SinrSample> sinr;
  std::vector<CapacityRecord> capacity;
  /// Mobility schemes only.
  std::vector<MoveRecord> moves;
  std::vector<NodeState> final_nodes;
  std::vector<SinrSample> final_sinr;
  std::vector<CapacityRecord> final_capacity;
  /// FRF-1 shadowing-free SINR at the initial positions, per node.
  std::vector<double> edge_reference_sinr_db;
  std::vector<int> edge_ids;

  const std::vector<SinrSample>& effective_sinr() const {
    return is_mobile(scheme) ? final_sinr : sinr;
  }
  const std::vector<CapacityRecord>& effective_capacity() const {
    return is_mobile(scheme) ? final_capacity : capacity;
  }
  /// Mean effective capacity over edge nodes; empty when there are none.
  std::optional<double> mean_edge_capacity() const;
};

/// Ids whose reference SINR is below the threshold (strict).
std::vector<int> classify_edge(std::span<const int> node_ids, std::span<const double> reference_sinr_db,
                               double threshold_db);

TrialResult run_drop(const Scenario& scenario, Scheme scheme, int node_count, int trial_index,
                     std::uint64_t trial_seed);
/// Uses config.nodes and derive_seed(config.seed, trial_index).
TrialResult run_drop(const Scenario& scenario, Scheme scheme, int trial_index);

/// Trials 0..trials-1 of one scheme, run on worker threads and returned in
/// trial order.
std::vector<TrialResult> run_trials(const Scenario& scenario, Scheme scheme, int node_count,
                                    int trials);

struct SinrMapRow {
  Scheme scheme;
  int node_id;
  double distance_m;
  double sinr_db;
};

struct EdgeCapacityRow {
  Scheme scheme;
  int num_nodes;
  int trial;
  /// NaN when the drop has no edge node.
  double avg_edge_capacity_bps;
};

struct MobilityRow {
  Scheme scheme;
  int area;
  int node_id;
  double initial_distance_m;
  double x_opt_m;
  double final_distance_m;
  double normalized_move;
};

struct EdgeCapacityMean {
  Scheme scheme;
  int num_nodes;
  double mean_bps;
  int trials_with_edge;
};

struct AreaMoveMean {
  Scheme scheme;
  int area;
  double mean_normalized_move;
  int nodes;
};

struct MetricsReport {
  std::vector<SinrMapRow> sinr_map;
  std::vector<EdgeCapacityRow> edge_capacity;
  std::vector<MobilityRow> mobility;
  std::vector<EdgeCapacityMean> edge_capacity_means;
  std::vector<AreaMoveMean> move_means;
  int trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
};

/// Runs `config.trials` drops for every (scheme, node count) pair and
/// aggregates them. Node ids in the rows are trial * num_nodes + local id.
/// Rows are sorted by their key columns, schemes by name.
MetricsReport run_experiment(const SimConfig& config, std::span<const Scheme> schemes,
                             std::span<const int> node_counts);

/// Pooled per-area mean of normalized moves.
std::vector<AreaMoveMean> mean_move_by_area(std::span<const MobilityRow> rows);

/// Trial-level mean of edge capacities, skipping drops without edge nodes.
std::vector<EdgeCapacityMean> mean_edge_capacity(std::span<const EdgeCapacityRow> rows);

}  // namespace mcsim
