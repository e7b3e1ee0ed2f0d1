#include "mcsim/cli.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "mcsim/config.h"
#include "mcsim/csv.h"
#include "mcsim/errors.h"
#include "mcsim/harness.h"
#include "mcsim/pfr_opt.h"

namespace mcsim {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string scheme;
  std::optional<int> nodes;
  std::optional<int> trials;
  std::string out_dir = ".";
  std::string precision = "6";
};

void add_common(CLI::App* cmd, Flags& f, bool population_flags) {
  cmd->add_option("--config", f.config_path, "key=value configuration file");
  cmd->add_option("--seed", f.seed, "master seed (overrides sim.seed)");
  cmd->add_option("--out", f.out_dir, "output directory");
  cmd->add_option("--precision", f.precision, "number format: 6 significant digits or 'full'")
      ->check(CLI::IsMember({"6", "full"}));
  if (population_flags) {
    cmd->add_option("--scheme", f.scheme, "frf1, pfr, mc-frf1 or mc-pfr (comma list allowed)");
    cmd->add_option("--nodes", f.nodes, "nodes per drop (overrides sim.nodes)");
    cmd->add_option("--trials", f.trials, "number of drops (overrides sim.trials)");
  }
}

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

SimConfig resolve_config(const Flags& f, std::ostream& err) {
  ConfigLoad load;
  if (!f.config_path.empty()) {
    try {
      load = load_config_file(f.config_path);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw IoError(e.what());
    }
  } else {
    load.defaulted_keys = config_keys();
  }
  SimConfig& c = load.config;
  std::set<std::string> from_flags;
  if (f.seed) {
    c.seed = *f.seed;
    from_flags.insert("sim.seed");
  }
  if (f.nodes) {
    c.nodes = *f.nodes;
    from_flags.insert("sim.nodes");
  }
  if (f.trials) {
    c.trials = *f.trials;
    from_flags.insert("sim.trials");
  }
  if (const char* env = std::getenv("SIM_THREADS"); env && *env) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) throw ConfigError("SIM_THREADS", "SIM_THREADS must be a positive integer");
    c.threads = static_cast<int>(n);
  }
  for (const std::string& key : load.defaulted_keys) {
    if (!from_flags.count(key)) err << "mcsim: default " << key << " = " << config_value(c, key) << '\n';
  }
  try {
    c.validate();
  } catch (const InvalidParameter& e) {
    const std::string msg = e.what();
    throw ConfigError(msg.substr(0, msg.find(' ')), msg);
  }
  return c;
}

std::vector<Scheme> resolve_schemes(const std::string& flag, std::vector<Scheme> fallback) {
  if (flag.empty()) return fallback;
  std::vector<Scheme> out;
  std::stringstream in(flag);
  std::string name;
  while (std::getline(in, name, ',')) {
    const auto s = parse_scheme(name);
    if (!s) throw ConfigError("--scheme", "--scheme: unknown scheme '" + name + "'");
    out.push_back(*s);
  }
  if (out.empty()) throw ConfigError("--scheme", "--scheme: no scheme given");
  return out;
}

template <typename Writer>
void write_file(const std::string& dir, const std::string& name, Writer&& write) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  const fs::path path = fs::path(dir) / name;
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  write(file);
  file.flush();
  if (!file) throw IoError("failed writing " + path.string());
}

std::string join_schemes(const std::vector<Scheme>& schemes) {
  std::string out;
  for (Scheme s : schemes) {
    if (!out.empty()) out += ',';
    out += scheme_name(s);
  }
  return out;
}

Precision precision_of(const Flags& f) { return f.precision == "full" ? Precision::Full : Precision::SixDigits; }

int run_optimize_alpha(const Flags& f, std::ostream& out, std::ostream& err) {
  const SimConfig c = resolve_config(f, err);
  const CellLayout layout = build_layout(c.rings, c.cell_radius_m);
  AlphaSearchOptions opt;
  opt.n_samples = c.alpha_samples;
  opt.grid_step = c.alpha_grid_step;
  opt.domain = c.alpha_domain;
  opt.include_shadowing = c.alpha_include_shadowing;
  opt.total_subcarriers = c.subcarriers;
  const AlphaSearchResult res = optimize_alpha(layout, c.channel, opt, c.seed);
  write_file(f.out_dir, "alpha_sweep.csv",
             [&](std::ostream& s) { write_alpha_sweep(s, res.sweep, precision_of(f)); });
  out << "optimize-alpha: alpha_opt=" << format_number(res.alpha_opt, Precision::SixDigits)
      << " objective=" << format_number(res.best.objective, Precision::SixDigits)
      << " mean_sinr=" << format_number(res.best.mean_sinr, Precision::SixDigits)
      << " var_sinr=" << format_number(res.best.var_sinr, Precision::SixDigits)
      << " domain=" << (c.alpha_domain == SinrDomain::Decibel ? "db" : "linear")
      << " shadowing=" << (c.alpha_include_shadowing ? "on" : "off") << " samples=" << c.alpha_samples
      << " grid_step=" << format_number(c.alpha_grid_step, Precision::SixDigits) << " seed=" << c.seed
      << " config_hash=" << hex64(config_hash(c)) << '\n';
  return kExitOk;
}

int run_sinr_map(const Flags& f, std::ostream& out, std::ostream& err) {
  const SimConfig c = resolve_config(f, err);
  const auto schemes = resolve_schemes(f.scheme, {std::begin(kAllSchemes), std::end(kAllSchemes)});
  const int counts[] = {c.nodes};
  const MetricsReport r = run_experiment(c, schemes, counts);
  write_file(f.out_dir, "sinr_map.csv", [&](std::ostream& s) { write_sinr_map(s, r.sinr_map, precision_of(f)); });
  out << "sinr-map: schemes=" << join_schemes(schemes) << " nodes=" << c.nodes << " trials=" << c.trials
      << " rows=" << r.sinr_map.size() << " seed=" << c.seed << " config_hash=" << hex64(r.config_hash)
      << '\n';
  return kExitOk;
}

int run_edge_capacity(const Flags& f, std::ostream& out, std::ostream& err) {
  const SimConfig c = resolve_config(f, err);
  const auto schemes = resolve_schemes(f.scheme, {std::begin(kAllSchemes), std::end(kAllSchemes)});
  const std::vector<int> counts = f.nodes ? std::vector<int>{c.nodes} : c.edge_node_counts;
  const MetricsReport r = run_experiment(c, schemes, counts);
  write_file(f.out_dir, "edge_capacity.csv",
             [&](std::ostream& s) { write_edge_capacity(s, r.edge_capacity, precision_of(f)); });
  // Summarize at sim.nodes when it is part of the sweep, else at the largest count.
  int shown = counts.back();
  for (int n : counts) {
    if (n == c.nodes) shown = n;
  }
  out << "edge-capacity: rows=" << r.edge_capacity.size() << " trials=" << c.trials << " mean_bps@" << shown
      << "nodes";
  for (const EdgeCapacityMean& m : r.edge_capacity_means) {
    if (m.num_nodes == shown) out << ' ' << scheme_name(m.scheme) << '=' << format_number(m.mean_bps, Precision::SixDigits);
  }
  out << " seed=" << c.seed << " config_hash=" << hex64(r.config_hash) << '\n';
  return kExitOk;
}

int run_mobility_stats(const Flags& f, std::ostream& out, std::ostream& err) {
  const SimConfig c = resolve_config(f, err);
  const auto schemes = resolve_schemes(f.scheme, {Scheme::McFrf1, Scheme::McPfr});
  for (Scheme s : schemes) {
    if (!is_mobile(s)) {
      throw ConfigError("--scheme", "--scheme: mobility-stats needs mc-frf1 or mc-pfr, got " +
                                        std::string(scheme_name(s)));
    }
  }
  const int counts[] = {c.nodes};
  const MetricsReport r = run_experiment(c, schemes, counts);
  write_file(f.out_dir, "mobility.csv", [&](std::ostream& s) { write_mobility(s, r.mobility, precision_of(f)); });
  out << "mobility-stats: nodes=" << c.nodes << " trials=" << c.trials;
  for (const AreaMoveMean& m : r.move_means) {
    out << ' ' << scheme_name(m.scheme) << ".area" << m.area << '='
        << format_number(m.mean_normalized_move, Precision::SixDigits);
  }
  out << " seed=" << c.seed << " config_hash=" << hex64(r.config_hash) << '\n';
  return kExitOk;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Downlink mobility-control simulator"};
  app.name("mcsim-cli");
  app.require_subcommand(1);
  Flags flags;
  CLI::App* alpha = app.add_subcommand("optimize-alpha", "grid search of the PFR inner-radius ratio");
  CLI::App* sinr = app.add_subcommand("sinr-map", "SINR against distance to the serving BS");
  CLI::App* edge = app.add_subcommand("edge-capacity", "average cell-edge capacity against node count");
  CLI::App* mob = app.add_subcommand("mobility-stats", "moving distance per area");
  add_common(alpha, flags, false);
  add_common(sinr, flags, true);
  add_common(edge, flags, true);
  add_common(mob, flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mcsim-cli: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (alpha->parsed()) return run_optimize_alpha(flags, out, err);
    if (sinr->parsed()) return run_sinr_map(flags, out, err);
    if (edge->parsed()) return run_edge_capacity(flags, out, err);
    if (mob->parsed()) return run_mobility_stats(flags, out, err);
  } catch (const ConfigError& e) {
    err << "mcsim-cli: invalid configuration (" << e.key() << "): " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParameter& e) {
    err << "mcsim-cli: invalid parameter: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "mcsim-cli: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace mcsim
