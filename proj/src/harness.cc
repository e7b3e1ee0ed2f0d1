#include "mcsim/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "mcsim/errors.h"
#include "mcsim/rng.h"

namespace mcsim {

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::Frf1: return "frf1";
    case Scheme::Pfr: return "pfr";
    case Scheme::McFrf1: return "mc-frf1";
    case Scheme::McPfr: return "mc-pfr";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : kAllSchemes) {
    if (scheme_name(s) == name) return s;
  }
  return std::nullopt;
}

bool is_mobile(Scheme scheme) { return scheme == Scheme::McFrf1 || scheme == Scheme::McPfr; }
bool uses_partial_reuse(Scheme scheme) { return scheme == Scheme::Pfr || scheme == Scheme::McPfr; }

void SimConfig::validate() const {
  channel.validate();
  if (!(cell_radius_m > 0.0)) throw InvalidParameter("cell.radius_m must be > 0");
  if (rings < 0) throw InvalidParameter("layout.rings must be >= 0");
  if (subcarriers < 4) throw InvalidParameter("spectrum.subcarriers must be >= 4");
  if (!(pfr_alpha > 0.0 && pfr_alpha < 1.0)) throw InvalidParameter("pfr.alpha must lie in (0, 1)");
  if (nodes < 1) throw InvalidParameter("sim.nodes must be >= 1");
  if (trials < 1) throw InvalidParameter("sim.trials must be >= 1");
  if (!(x_max_m > 0.0)) throw InvalidParameter("mobility.x_max_m must be > 0");
  if (!(grid_step_m > 0.0)) throw InvalidParameter("mobility.grid_step_m must be > 0");
  if (lifetime_exponents.size() != area_boundaries_m.size()) {
    throw InvalidParameter("lifetime.exponents needs one entry per area in area.boundaries_m");
  }
  for (double p : lifetime_exponents) {
    if (!(p > 0.0)) throw InvalidParameter("lifetime.exponents must be > 0");
  }
  AreaPartition check(area_boundaries_m);
  if (area_boundaries_m.back() < cell_radius_m) {
    throw InvalidParameter("area.boundaries_m must reach the cell radius");
  }
  if (pfr_profile_areas.size() != 2) throw InvalidParameter("lifetime.pfr_areas needs two areas");
  for (int a : pfr_profile_areas) {
    if (a < 1 || static_cast<std::size_t>(a) > lifetime_exponents.size()) {
      throw InvalidParameter("lifetime.pfr_areas refers to an unknown area");
    }
  }
  if (edge_node_counts.empty()) throw InvalidParameter("edge.node_counts must not be empty");
  for (int n : edge_node_counts) {
    if (n < 1) throw InvalidParameter("edge.node_counts must be >= 1");
  }
  if (alpha_samples < 2) throw InvalidParameter("pfr.samples must be >= 2");
  if (!(alpha_grid_step > 0.0 && alpha_grid_step < 0.5)) {
    throw InvalidParameter("pfr.grid_step must lie in (0, 0.5)");
  }
  if (threads < 0) throw InvalidParameter("thread count must be >= 0");
}

std::string canonical_config_text(const SimConfig& c) {
  std::string out;
  char buf[64];
  const auto num = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += key;
    out += '=';
    out += buf;
    out += '\n';
  };
  const auto list = [&](const char* key, const auto& values) {
    out += key;
    out += '=';
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(values[i]));
      if (i) out += ',';
      out += buf;
    }
    out += '\n';
  };
  num("cell.radius_m", c.cell_radius_m);
  num("layout.rings", c.rings);
  num("channel.intercept_db", c.channel.intercept_db);
  num("channel.pathloss_exponent", c.channel.pathloss_exponent);
  num("channel.shadowing_sigma_db", c.channel.shadowing_sigma_db);
  num("channel.min_distance_m", c.channel.min_distance_m);
  num("spectrum.subcarriers", c.subcarriers);
  num("spectrum.spacing_hz", c.channel.subcarrier_spacing_hz);
  num("power.bs_dbm", c.channel.bs_power_dbm);
  num("noise.density_dbm_hz", c.channel.noise_density_dbm_hz);
  num("link.ber", c.channel.ber);
  num("pfr.alpha", c.pfr_alpha);
  num("pfr.samples", c.alpha_samples);
  num("pfr.grid_step", c.alpha_grid_step);
  out += std::string("pfr.sinr_domain=") +
         (c.alpha_domain == SinrDomain::Decibel ? "db" : "linear") + "\n";
  out += std::string("pfr.include_shadowing=") + (c.alpha_include_shadowing ? "true" : "false") + "\n";
  num("mobility.x_max_m", c.x_max_m);
  num("mobility.grid_step_m", c.grid_step_m);
  list("lifetime.exponents", c.lifetime_exponents);
  list("lifetime.pfr_areas", c.pfr_profile_areas);
  list("area.boundaries_m", c.area_boundaries_m);
  num("edge.threshold_db", c.edge_threshold_db);
  list("edge.node_counts", c.edge_node_counts);
  std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(c.seed));
  out += std::string("sim.seed=") + buf + "\n";
  num("sim.trials", c.trials);
  num("sim.nodes", c.nodes);
  return out;
}

std::uint64_t config_hash(const SimConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_config_text(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

LifetimeProfile make_profile(double x_max, std::vector<double> exponents) {
  LifetimeProfile p{x_max, std::move(exponents)};
  p.validate();
  return p;
}

std::vector<double> pfr_exponents(const SimConfig& c) {
  std::vector<double> out;
  for (int a : c.pfr_profile_areas) out.push_back(c.lifetime_exponents.at(static_cast<std::size_t>(a - 1)));
  return out;
}

const SimConfig& validated(const SimConfig& c) {
  c.validate();
  return c;
}

}  // namespace

Scenario::Scenario(SimConfig config)
    : config_(validated(config)),
      layout_(build_layout(config_.rings, config_.cell_radius_m)),
      frf1_(layout_, build_plan(config_.subcarriers, ReuseScheme::full()), config_.channel),
      pfr_(layout_, build_plan(config_.subcarriers, ReuseScheme::partial(config_.pfr_alpha)),
           config_.channel),
      frf1_areas_(config_.area_boundaries_m),
      frf1_profile_(make_profile(config_.x_max_m, config_.lifetime_exponents)),
      pfr_profile_(make_profile(config_.x_max_m, pfr_exponents(config_))) {}

int Scenario::area_of(Scheme scheme, double distance_m, BandId band) const {
  if (uses_partial_reuse(scheme)) return band.is_inner() ? 1 : 2;
  return frf1_areas_.area_index(distance_m);
}

Drop draw_drop(const Scenario& scenario, int node_count, std::uint64_t trial_seed) {
  if (node_count < 1) throw InvalidParameter("a drop needs at least one node");
  const CellLayout& layout = scenario.layout();
  Rng rng(trial_seed);
  Drop drop;
  drop.positions.reserve(static_cast<std::size_t>(node_count));
  for (int i = 0; i < node_count; ++i) {
    drop.positions.push_back(sample_uniform_in_cell(layout.cell(1), layout, rng));
  }
  std::vector<int> node_ids(static_cast<std::size_t>(node_count));
  for (int i = 0; i < node_count; ++i) node_ids[static_cast<std::size_t>(i)] = i;
  std::vector<int> cell_ids;
  for (const Cell& c : layout.cells()) cell_ids.push_back(c.id);
  drop.shadowing = draw_shadowing(node_ids, cell_ids, scenario.config().channel.shadowing_sigma_db, rng);
  return drop;
}

std::optional<double> TrialResult::mean_edge_capacity() const {
  if (edge_ids.empty()) return std::nullopt;
  const auto& caps = effective_capacity();
  double sum = 0.0;
  for (int id : edge_ids) sum += caps.at(static_cast<std::size_t>(id)).capacity_bps;
  return sum / static_cast<double>(edge_ids.size());
}

std::vector<int> classify_edge(std::span<const int> node_ids, std::span<const double> reference_sinr_db,
                               double threshold_db) {
  if (node_ids.size() != reference_sinr_db.size()) {
    throw ConsistencyError("edge classification needs one SINR per node");
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < node_ids.size(); ++i) {
    if (reference_sinr_db[i] < threshold_db) out.push_back(node_ids[i]);
  }
  return out;
}

namespace {

// Allocation over the band memberships of `nodes`, assumed all in one cell.
Allocation allocate_cell(std::span<const NodeState> nodes, const SpectrumPlan& plan) {
  std::map<BandId, std::vector<int>> by_band;
  for (const NodeState& n : nodes) by_band[n.band].push_back(n.id);
  Allocation all;
  for (const auto& [band, ids] : by_band) all.merge(allocate(ids, plan.band(band)));
  return all;
}

void evaluate_links(const Downlink& downlink, std::span<const NodeState> nodes,
                    const ShadowingField& shadowing, std::vector<SinrSample>& sinr,
                    std::vector<CapacityRecord>& capacity) {
  const Allocation alloc = allocate_cell(nodes, downlink.plan());
  sinr.clear();
  capacity.clear();
  for (const NodeState& n : nodes) {
    sinr.push_back(downlink.sinr(n, n.position, n.band, shadowing.row(n.id)));
    capacity.push_back(node_capacity(n.id, alloc, sinr.back(), downlink.params()));
  }
}

}  // namespace

TrialResult run_drop(const Scenario& scenario, Scheme scheme, int node_count, int trial_index,
                     std::uint64_t trial_seed) {
  const Drop drop = draw_drop(scenario, node_count, trial_seed);
  const CellLayout& layout = scenario.layout();
  const Cell& home = layout.cell(1);
  const Downlink& downlink = scenario.downlink(scheme);
  const ReuseScheme reuse = scenario.reuse(scheme);

  TrialResult result;
  result.trial_index = trial_index;
  result.seed = trial_seed;
  result.scheme = scheme;

  for (int i = 0; i < node_count; ++i) {
    NodeState n;
    n.id = i;
    n.position = drop.positions[static_cast<std::size_t>(i)];
    n.serving_cell = home.id;
    const double d = distance(n.position, home.center);
    n.band = band_of_node(d, layout.cell_radius(), reuse, home);
    n.area = scenario.area_of(scheme, d, n.band);
    result.initial_nodes.push_back(n);
  }
  evaluate_links(downlink, result.initial_nodes, drop.shadowing, result.sinr, result.capacity);

  if (is_mobile(scheme)) {
    const MobilityContext ctx{downlink, reuse, scenario.profile(scheme),
                              RegionPopulations::count(result.initial_nodes)};
    for (const NodeState& n : result.initial_nodes) {
      MoveOutcome mv = optimize_move(n, ctx, drop.shadowing.row(n.id), scenario.config().grid_step_m);
      result.moves.push_back(mv.record);
      result.final_nodes.push_back(mv.final_state);
    }
    evaluate_links(downlink, result.final_nodes, drop.shadowing, result.final_sinr,
                   result.final_capacity);
  }

  // Edge membership is judged on the same FRF-1, shadowing-free reference
  // for every scheme.
  const Downlink& reference = scenario.downlink(Scheme::Frf1);
  const std::vector<double> no_shadow(layout.size(), 0.0);
  std::vector<int> ids;
  for (const NodeState& n : result.initial_nodes) {
    result.edge_reference_sinr_db.push_back(
        reference.sinr(n, n.position, BandId::inner(), no_shadow).sinr_db);
    ids.push_back(n.id);
  }
  result.edge_ids = classify_edge(ids, result.edge_reference_sinr_db, scenario.config().edge_threshold_db);
  return result;
}

TrialResult run_drop(const Scenario& scenario, Scheme scheme, int trial_index) {
  const SimConfig& c = scenario.config();
  return run_drop(scenario, scheme, c.nodes, trial_index,
                  derive_seed(c.seed, static_cast<std::uint64_t>(trial_index)));
}

namespace {

int worker_count(int configured, int jobs) {
  int n = configured > 0 ? configured : static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(n, 1, std::max(1, jobs));
}

}  // namespace

std::vector<TrialResult> run_trials(const Scenario& scenario, Scheme scheme, int node_count,
                                    int trials) {
  std::vector<TrialResult> results(static_cast<std::size_t>(trials));
  const std::uint64_t master = scenario.config().seed;
  const auto job = [&](int t) {
    results[static_cast<std::size_t>(t)] =
        run_drop(scenario, scheme, node_count, t, derive_seed(master, static_cast<std::uint64_t>(t)));
  };

  const int workers = worker_count(scenario.config().threads, trials);
  if (workers == 1) {
    for (int t = 0; t < trials; ++t) job(t);
    return results;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int t = next++; t < trials; t = next++) {
          try {
            job(t);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::vector<AreaMoveMean> mean_move_by_area(std::span<const MobilityRow> rows) {
  std::map<std::tuple<std::string_view, int>, std::pair<double, int>> acc;
  std::map<std::string_view, Scheme> names;
  for (const MobilityRow& r : rows) {
    auto& slot = acc[{scheme_name(r.scheme), r.area}];
    slot.first += r.normalized_move;
    ++slot.second;
    names[scheme_name(r.scheme)] = r.scheme;
  }
  std::vector<AreaMoveMean> out;
  for (const auto& [key, v] : acc) {
    out.push_back({names.at(std::get<0>(key)), std::get<1>(key), v.first / v.second, v.second});
  }
  return out;
}

std::vector<EdgeCapacityMean> mean_edge_capacity(std::span<const EdgeCapacityRow> rows) {
  std::map<std::tuple<std::string_view, int>, std::pair<double, int>> acc;
  std::map<std::string_view, Scheme> names;
  for (const EdgeCapacityRow& r : rows) {
    auto& slot = acc[{scheme_name(r.scheme), r.num_nodes}];
    names[scheme_name(r.scheme)] = r.scheme;
    if (std::isnan(r.avg_edge_capacity_bps)) continue;
    slot.first += r.avg_edge_capacity_bps;
    ++slot.second;
  }
  std::vector<EdgeCapacityMean> out;
  for (const auto& [key, v] : acc) {
    const double mean = v.second ? v.first / v.second : std::numeric_limits<double>::quiet_NaN();
    out.push_back({names.at(std::get<0>(key)), std::get<1>(key), mean, v.second});
  }
  return out;
}

MetricsReport run_experiment(const SimConfig& config, std::span<const Scheme> schemes,
                             std::span<const int> node_counts) {
  const Scenario scenario(config);
  MetricsReport report;
  report.trials = config.trials;
  report.seed = config.seed;
  report.config_hash = mcsim::config_hash(config);

  for (Scheme scheme : schemes) {
    for (int count : node_counts) {
      const std::vector<TrialResult> trials = run_trials(scenario, scheme, count, config.trials);
      for (const TrialResult& t : trials) {
        const int base = t.trial_index * count;
        const auto& s = t.effective_sinr();
        for (const SinrSample& x : s) {
          report.sinr_map.push_back({scheme, base + x.node_id, x.distance_m, x.sinr_db});
        }
        const auto edge = t.mean_edge_capacity();
        report.edge_capacity.push_back(
            {scheme, count, t.trial_index, edge ? *edge : std::numeric_limits<double>::quiet_NaN()});
        for (const MoveRecord& m : t.moves) {
          report.mobility.push_back({scheme, m.area, base + m.node_id, m.initial_distance_m, m.x_opt_m,
                                     m.final_distance_m, m.normalized_move});
        }
      }
    }
  }

  const auto name = [](Scheme s) { return scheme_name(s); };
  std::sort(report.sinr_map.begin(), report.sinr_map.end(), [&](const auto& a, const auto& b) {
    return std::make_tuple(name(a.scheme), a.node_id) < std::make_tuple(name(b.scheme), b.node_id);
  });
  std::sort(report.edge_capacity.begin(), report.edge_capacity.end(), [&](const auto& a, const auto& b) {
    return std::make_tuple(name(a.scheme), a.num_nodes, a.trial) <
           std::make_tuple(name(b.scheme), b.num_nodes, b.trial);
  });
  std::sort(report.mobility.begin(), report.mobility.end(), [&](const auto& a, const auto& b) {
    return std::make_tuple(name(a.scheme), a.area, a.node_id) <
           std::make_tuple(name(b.scheme), b.area, b.node_id);
  });
  report.edge_capacity_means = mean_edge_capacity(report.edge_capacity);
  report.move_means = mean_move_by_area(report.mobility);
  return report;
}

}  // namespace mcsim
