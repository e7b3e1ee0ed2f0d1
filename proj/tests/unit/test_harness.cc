#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>

#include "mcsim/errors.h"
#include "mcsim/harness.h"

using namespace mcsim;

namespace {

SimConfig small_config() {
  SimConfig c;
  c.trials = 4;
  c.nodes = 12;
  c.threads = 1;
  return c;
}

}  // namespace

TEST_CASE("scheme names round-trip") {
  for (Scheme s : kAllSchemes) CHECK(parse_scheme(scheme_name(s)) == s);
  CHECK_FALSE(parse_scheme("frf3").has_value());
  CHECK(is_mobile(Scheme::McPfr));
  CHECK_FALSE(is_mobile(Scheme::Pfr));
  CHECK(uses_partial_reuse(Scheme::McPfr));
}

TEST_CASE("config validation and hash") {
  SimConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(config_hash(c) == config_hash(SimConfig{}));
  SimConfig d = c;
  d.pfr_alpha = 0.5;
  CHECK(config_hash(c) != config_hash(d));
  d = c;
  d.nodes = 0;
  CHECK_THROWS_AS(d.validate(), InvalidParameter);
  d = c;
  d.lifetime_exponents = {1.0, 2.0};
  CHECK_THROWS_AS(d.validate(), InvalidParameter);
}

TEST_CASE("run_drop is deterministic") {
  const Scenario sc(small_config());
  for (Scheme s : kAllSchemes) {
    const TrialResult a = run_drop(sc, s, 0);
    const TrialResult b = run_drop(sc, s, 0);
    REQUIRE(a.effective_sinr().size() == b.effective_sinr().size());
    for (std::size_t i = 0; i < a.effective_sinr().size(); ++i) {
      CHECK(a.effective_sinr()[i].sinr_linear == b.effective_sinr()[i].sinr_linear);
      CHECK(a.effective_capacity()[i].capacity_bps == b.effective_capacity()[i].capacity_bps);
    }
  }
}

TEST_CASE("every scheme sees the same drop") {
  const Scenario sc(small_config());
  const TrialResult base = run_drop(sc, Scheme::Frf1, 2);
  for (Scheme s : kAllSchemes) {
    const TrialResult r = run_drop(sc, s, 2);
    REQUIRE(r.initial_nodes.size() == base.initial_nodes.size());
    for (std::size_t i = 0; i < r.initial_nodes.size(); ++i) {
      CHECK(r.initial_nodes[i].position == base.initial_nodes[i].position);
    }
    CHECK(r.edge_ids == base.edge_ids);
  }
}

TEST_CASE("static schemes record no moves") {
  const Scenario sc(small_config());
  CHECK(run_drop(sc, Scheme::Frf1, 0).moves.empty());
  CHECK(run_drop(sc, Scheme::Pfr, 0).moves.empty());
  CHECK(run_drop(sc, Scheme::McFrf1, 0).moves.size() == 12);
}

TEST_CASE("mobile nodes mostly end in the inner two thirds of the cell") {
  SimConfig c = small_config();
  c.nodes = 30;
  const Scenario sc(c);
  int beyond = 0, total = 0;
  for (int t = 0; t < 4; ++t) {
    for (const MoveRecord& m : run_drop(sc, Scheme::McFrf1, t).moves) {
      beyond += m.final_distance_m > 667.0;
      ++total;
    }
  }
  WARN(beyond < total / 4);
  CHECK(beyond < total);
}

TEST_CASE("classify_edge") {
  const std::vector<int> ids{1, 2, 3};
  const std::vector<double> ref{-2.0, 12.0, 0.0};
  CHECK(classify_edge(ids, ref, 0.0) == std::vector<int>{1});
  CHECK(classify_edge(ids, ref, std::numeric_limits<double>::infinity()) == ids);
  CHECK(classify_edge(ids, ref, -100.0).empty());
}

TEST_CASE("edge reference: a node at 900 m is edge, one at 300 m is not") {
  const Scenario sc(small_config());
  const Downlink& dl = sc.downlink(Scheme::Frf1);
  const std::vector<double> zeros(37, 0.0);
  NodeState n;
  n.position = {0.0, 900.0};
  const double far_db = dl.sinr(n, n.position, BandId::inner(), zeros).sinr_db;
  n.position = {0.0, 300.0};
  const double near_db = dl.sinr(n, n.position, BandId::inner(), zeros).sinr_db;
  const std::vector<int> ids{0, 1};
  const std::vector<double> ref{far_db, near_db};
  CHECK(classify_edge(ids, ref, 0.0) == std::vector<int>{0});
}

TEST_CASE("run_trials returns trials in order regardless of threading") {
  const Scenario sc(small_config());
  SimConfig threaded = small_config();
  threaded.threads = 4;
  const Scenario sc4(threaded);
  const std::vector<TrialResult> serial = run_trials(sc, Scheme::McPfr, 12, 4);
  const std::vector<TrialResult> parallel = run_trials(sc4, Scheme::McPfr, 12, 4);
  REQUIRE(serial.size() == 4);
  for (int t = 3; t >= 0; --t) {
    const TrialResult alone = run_drop(sc, Scheme::McPfr, t);
    const auto idx = static_cast<std::size_t>(t);
    CHECK(serial[idx].trial_index == t);
    for (std::size_t i = 0; i < alone.moves.size(); ++i) {
      CHECK(serial[idx].moves[i].x_opt_m == alone.moves[i].x_opt_m);
      CHECK(parallel[idx].moves[i].x_opt_m == alone.moves[i].x_opt_m);
    }
  }
}

TEST_CASE("one-trial report equals the drop it came from") {
  SimConfig c = small_config();
  c.trials = 1;
  const Scenario sc(c);
  const std::vector<Scheme> schemes{Scheme::McFrf1};
  const std::vector<int> counts{12};
  const MetricsReport rep = run_experiment(c, schemes, counts);
  const TrialResult r = run_drop(sc, Scheme::McFrf1, 0);
  REQUIRE(rep.edge_capacity.size() == 1);
  const std::optional<double> mean = r.mean_edge_capacity();
  if (mean) {
    CHECK(rep.edge_capacity[0].avg_edge_capacity_bps == *mean);
    CHECK(rep.edge_capacity_means[0].mean_bps == *mean);
  } else {
    CHECK(std::isnan(rep.edge_capacity[0].avg_edge_capacity_bps));
  }
  REQUIRE(rep.mobility.size() == r.moves.size());
  std::map<int, double> by_id;
  for (const MoveRecord& m : r.moves) by_id[m.node_id] = m.x_opt_m;
  for (const MobilityRow& row : rep.mobility) CHECK(row.x_opt_m == by_id.at(row.node_id));
}

TEST_CASE("report aggregates equal recomputed means") {
  SimConfig c = small_config();
  const std::vector<Scheme> schemes{Scheme::Frf1, Scheme::McPfr};
  const std::vector<int> counts{10, 20};
  const MetricsReport rep = run_experiment(c, schemes, counts);
  CHECK(rep.edge_capacity.size() == schemes.size() * counts.size() * 4);
  for (const EdgeCapacityMean& m : rep.edge_capacity_means) {
    double sum = 0;
    int n = 0;
    for (const EdgeCapacityRow& row : rep.edge_capacity) {
      if (row.scheme != m.scheme || row.num_nodes != m.num_nodes) continue;
      if (std::isnan(row.avg_edge_capacity_bps)) continue;
      sum += row.avg_edge_capacity_bps;
      ++n;
    }
    CHECK(n == m.trials_with_edge);
    if (n > 0) CHECK(m.mean_bps == doctest::Approx(sum / n).epsilon(1e-12));
  }
  for (const AreaMoveMean& m : rep.move_means) {
    double sum = 0;
    int n = 0;
    for (const MobilityRow& row : rep.mobility) {
      if (row.scheme == m.scheme && row.area == m.area) {
        sum += row.normalized_move;
        ++n;
      }
    }
    CHECK(n == m.nodes);
    CHECK(m.mean_normalized_move == doctest::Approx(sum / n).epsilon(1e-12));
  }
}

TEST_CASE("rows are sorted by scheme name then keys") {
  SimConfig c = small_config();
  c.trials = 2;
  const std::vector<Scheme> schemes{Scheme::Pfr, Scheme::Frf1, Scheme::McPfr, Scheme::McFrf1};
  const std::vector<int> counts{12};
  const MetricsReport rep = run_experiment(c, schemes, counts);
  for (std::size_t i = 1; i < rep.sinr_map.size(); ++i) {
    const auto& a = rep.sinr_map[i - 1];
    const auto& b = rep.sinr_map[i];
    const bool ordered = scheme_name(a.scheme) < scheme_name(b.scheme) ||
                         (a.scheme == b.scheme && a.node_id < b.node_id);
    CHECK(ordered);
  }
}

TEST_CASE("empty edge set yields NaN and is excluded from the mean") {
  const std::vector<EdgeCapacityRow> rows{
      {Scheme::Frf1, 5, 0, std::numeric_limits<double>::quiet_NaN()},
      {Scheme::Frf1, 5, 1, 100.0},
      {Scheme::Frf1, 5, 2, 300.0}};
  const std::vector<EdgeCapacityMean> m = mean_edge_capacity(rows);
  REQUIRE(m.size() == 1);
  CHECK(m[0].mean_bps == 200.0);
  CHECK(m[0].trials_with_edge == 2);
}
