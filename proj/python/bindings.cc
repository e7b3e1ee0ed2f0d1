#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mcsim/cli.h"
#include "mcsim/errors.h"
#include "mcsim/harness.h"
#include "mcsim/link.h"
#include "mcsim/mobility.h"
#include "mcsim/pfr_opt.h"

namespace py = pybind11;
using namespace mcsim;

namespace {

ReuseScheme reuse_for(std::optional<double> alpha) {
  return alpha ? ReuseScheme::partial(*alpha) : ReuseScheme::full();
}

BandId band_from(const std::string& name) {
  if (name == "inner") return BandId::inner();
  if (name.rfind("outer", 0) == 0 && name.size() == 6) return BandId::outer(name[5] - '0');
  throw InvalidParameter("band must be 'inner' or 'outer0'..'outer2', got '" + name + "'");
}

std::vector<Scheme> schemes_from(const std::vector<std::string>& names) {
  std::vector<Scheme> out;
  for (const std::string& n : names) {
    const auto s = parse_scheme(n);
    if (!s) throw InvalidParameter("unknown scheme '" + n + "'");
    out.push_back(*s);
  }
  return out;
}

py::dict report_to_dict(const MetricsReport& rep) {
  py::list sinr, edge, mobility, edge_means, move_means;
  for (const auto& r : rep.sinr_map) {
    sinr.append(py::dict(py::arg("scheme") = scheme_name(r.scheme), py::arg("node_id") = r.node_id,
                         py::arg("distance_m") = r.distance_m, py::arg("sinr_db") = r.sinr_db));
  }
  for (const auto& r : rep.edge_capacity) {
    edge.append(py::dict(py::arg("scheme") = scheme_name(r.scheme), py::arg("num_nodes") = r.num_nodes,
                         py::arg("trial") = r.trial, py::arg("avg_edge_capacity_bps") = r.avg_edge_capacity_bps));
  }
  for (const auto& r : rep.mobility) {
    mobility.append(py::dict(py::arg("scheme") = scheme_name(r.scheme), py::arg("area") = r.area,
                             py::arg("node_id") = r.node_id, py::arg("initial_distance_m") = r.initial_distance_m,
                             py::arg("x_opt_m") = r.x_opt_m, py::arg("final_distance_m") = r.final_distance_m,
                             py::arg("normalized_move") = r.normalized_move));
  }
  for (const auto& m : rep.edge_capacity_means) {
    edge_means.append(py::dict(py::arg("scheme") = scheme_name(m.scheme), py::arg("num_nodes") = m.num_nodes,
                               py::arg("mean_bps") = m.mean_bps, py::arg("trials_with_edge") = m.trials_with_edge));
  }
  for (const auto& m : rep.move_means) {
    move_means.append(py::dict(py::arg("scheme") = scheme_name(m.scheme), py::arg("area") = m.area,
                               py::arg("mean_normalized_move") = m.mean_normalized_move,
                               py::arg("nodes") = m.nodes));
  }
  py::dict d;
  d["sinr_map"] = sinr;
  d["edge_capacity"] = edge;
  d["mobility"] = mobility;
  d["edge_capacity_means"] = edge_means;
  d["move_means"] = move_means;
  d["trials"] = rep.trials;
  d["seed"] = rep.seed;
  d["config_hash"] = rep.config_hash;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hexagonal OFDMA downlink simulator with partial frequency reuse and mobility control";

  py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
  py::register_exception<OutOfCell>(m, "OutOfCell", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  py::class_<ChannelParams>(m, "ChannelParams")
      .def(py::init<>())
      .def_readwrite("intercept_db", &ChannelParams::intercept_db)
      .def_readwrite("pathloss_exponent", &ChannelParams::pathloss_exponent)
      .def_readwrite("shadowing_sigma_db", &ChannelParams::shadowing_sigma_db)
      .def_readwrite("noise_density_dbm_hz", &ChannelParams::noise_density_dbm_hz)
      .def_readwrite("bs_power_dbm", &ChannelParams::bs_power_dbm)
      .def_readwrite("subcarrier_spacing_hz", &ChannelParams::subcarrier_spacing_hz)
      .def_readwrite("ber", &ChannelParams::ber)
      .def_readwrite("min_distance_m", &ChannelParams::min_distance_m);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("channel", &SimConfig::channel)
      .def_readwrite("cell_radius_m", &SimConfig::cell_radius_m)
      .def_readwrite("rings", &SimConfig::rings)
      .def_readwrite("subcarriers", &SimConfig::subcarriers)
      .def_readwrite("pfr_alpha", &SimConfig::pfr_alpha)
      .def_readwrite("nodes", &SimConfig::nodes)
      .def_readwrite("trials", &SimConfig::trials)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("x_max_m", &SimConfig::x_max_m)
      .def_readwrite("grid_step_m", &SimConfig::grid_step_m)
      .def_readwrite("lifetime_exponents", &SimConfig::lifetime_exponents)
      .def_readwrite("area_boundaries_m", &SimConfig::area_boundaries_m)
      .def_readwrite("edge_threshold_db", &SimConfig::edge_threshold_db)
      .def_readwrite("edge_node_counts", &SimConfig::edge_node_counts)
      .def_readwrite("threads", &SimConfig::threads)
      .def("validate", &SimConfig::validate)
      .def("hash", [](const SimConfig& c) { return config_hash(c); });

  m.def(
      "cells",
      [](int rings, double radius) {
        py::list out;
        for (const Cell& c : build_layout(rings, radius).cells()) {
          out.append(py::make_tuple(c.id, c.center.x, c.center.y, c.outer_color));
        }
        return out;
      },
      py::arg("rings") = 3, py::arg("cell_radius_m") = 1000.0,
      "(id, x, y, outer_color) for every cell of the layout.");

  m.def(
      "serving_cell",
      [](double x, double y, int rings, double radius) { return serving_cell({x, y}, build_layout(rings, radius)); },
      py::arg("x"), py::arg("y"), py::arg("rings") = 3, py::arg("cell_radius_m") = 1000.0);

  m.def(
      "path_loss_db",
      [](double d, double shadow, const ChannelParams& p) { return path_loss_db(d, shadow, p).db; },
      py::arg("distance_m"), py::arg("shadow_db") = 0.0, py::arg("params") = ChannelParams{});
  m.def("channel_gain_linear", &channel_gain_linear, py::arg("path_loss_db"));
  m.def("snr_gap", &snr_gap, py::arg("ber"));
  m.def("noise_power_w", &noise_power_w, py::arg("noise_density_dbm_hz"), py::arg("subcarrier_spacing_hz"));
  m.def("per_subcarrier_power_w", &per_subcarrier_power_w, py::arg("bs_power_dbm"), py::arg("total_subcarriers"));
  m.def("w_to_dbm", &w_to_dbm);

  m.def(
      "build_plan",
      [](int total, std::optional<double> alpha) {
        const SpectrumPlan plan = build_plan(total, reuse_for(alpha));
        py::dict d;
        d["inner"] = plan.inner_band;
        d["outer"] = py::make_tuple(plan.outer_bands[0], plan.outer_bands[1], plan.outer_bands[2]);
        return d;
      },
      py::arg("total_subcarriers") = 300, py::arg("alpha") = py::none(),
      "Subcarrier indices per band; alpha None means full reuse.");

  m.def(
      "interference_set",
      [](int cell_id, const std::string& band, int rings, double radius) {
        const CellLayout layout = build_layout(rings, radius);
        return interference_set(layout.cell(cell_id), band_from(band), layout);
      },
      py::arg("cell_id"), py::arg("band"), py::arg("rings") = 3, py::arg("cell_radius_m") = 1000.0);

  m.def(
      "lifetime_factor",
      [](int area, double x, std::vector<double> exponents, double x_max) {
        return lifetime_factor(area, x, LifetimeProfile{x_max, std::move(exponents)});
      },
      py::arg("area"), py::arg("x_m"), py::arg("exponents"), py::arg("x_max_m") = 400.0);

  m.def(
      "optimize_alpha",
      [](std::uint64_t seed, int samples, double grid_step, bool linear, bool include_shadowing,
         const ChannelParams& params) {
        AlphaSearchOptions o;
        o.n_samples = samples;
        o.grid_step = grid_step;
        o.domain = linear ? SinrDomain::Linear : SinrDomain::Decibel;
        o.include_shadowing = include_shadowing;
        AlphaSearchResult r;
        {
          py::gil_scoped_release release;
          r = optimize_alpha(build_layout(3, 1000.0), params, o, seed);
        }
        py::list sweep;
        for (const auto& p : r.sweep) sweep.append(py::make_tuple(p.alpha, p.mean_sinr, p.var_sinr, p.objective));
        return py::make_tuple(r.alpha_opt, sweep);
      },
      py::arg("seed") = 1, py::arg("samples") = 10000, py::arg("grid_step") = 0.001, py::arg("linear") = false,
      py::arg("include_shadowing") = false, py::arg("params") = ChannelParams{},
      "Returns (alpha_opt, [(alpha, mean, var, objective), ...]).");

  m.def(
      "run_experiment",
      [](const SimConfig& config, const std::vector<std::string>& schemes, std::vector<int> node_counts) {
        if (node_counts.empty()) node_counts.push_back(config.nodes);
        const std::vector<Scheme> s = schemes_from(schemes);
        MetricsReport rep;
        {
          py::gil_scoped_release release;
          rep = run_experiment(config, s, node_counts);
        }
        return report_to_dict(rep);
      },
      py::arg("config"), py::arg("schemes") = std::vector<std::string>{"frf1", "pfr", "mc-frf1", "mc-pfr"},
      py::arg("node_counts") = std::vector<int>{});

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "mcsim-cli");
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = dispatch(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a CLI subcommand in-process; returns (exit_code, stdout, stderr).");
}
