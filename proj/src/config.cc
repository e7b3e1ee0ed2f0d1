#include "mcsim/config.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace mcsim {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string s(trim(text));
  std::istringstream in(s);
  in.imbue(std::locale::classic());
  double v = 0.0;
  in >> v;
  if (s.empty() || !in || !in.eof() || !std::isfinite(v)) {
    throw ConfigError(std::string(key), "invalid number '" + s + "' for key " + std::string(key));
  }
  return v;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
  const std::string_view s = trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(std::string(key), "invalid integer '" + std::string(s) + "' for key " + std::string(key));
  }
  return v;
}

template <typename T, typename Parse>
std::vector<T> parse_list(std::string_view key, std::string_view text, Parse parse) {
  std::vector<T> out;
  std::string_view rest = trim(text);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    out.push_back(parse(key, rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (out.empty()) throw ConfigError(std::string(key), "empty list for key " + std::string(key));
  return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(std::string(key), "invalid boolean '" + std::string(s) + "' for key " + std::string(key));
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
std::string fmt_list(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += fmt_double(static_cast<double>(values[i]));
  }
  return out;
}

struct Field {
  std::function<void(SimConfig&, std::string_view key, std::string_view value)> set;
  std::function<std::string(const SimConfig&)> get;
};

Field real(double SimConfig::*member) {
  return {[member](SimConfig& c, std::string_view k, std::string_view v) { c.*member = parse_double(k, v); },
          [member](const SimConfig& c) { return fmt_double(c.*member); }};
}

Field channel_real(double ChannelParams::*member) {
  return {[member](SimConfig& c, std::string_view k, std::string_view v) {
            c.channel.*member = parse_double(k, v);
          },
          [member](const SimConfig& c) { return fmt_double(c.channel.*member); }};
}

Field integer(int SimConfig::*member) {
  return {[member](SimConfig& c, std::string_view k, std::string_view v) { c.*member = parse_int<int>(k, v); },
          [member](const SimConfig& c) { return std::to_string(c.*member); }};
}

const std::vector<std::pair<std::string, Field>>& field_table() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"cell.radius_m", real(&SimConfig::cell_radius_m)},
      {"layout.rings", integer(&SimConfig::rings)},
      {"channel.intercept_db", channel_real(&ChannelParams::intercept_db)},
      {"channel.pathloss_exponent", channel_real(&ChannelParams::pathloss_exponent)},
      {"channel.shadowing_sigma_db", channel_real(&ChannelParams::shadowing_sigma_db)},
      {"channel.min_distance_m", channel_real(&ChannelParams::min_distance_m)},
      {"spectrum.subcarriers", integer(&SimConfig::subcarriers)},
      {"spectrum.spacing_hz", channel_real(&ChannelParams::subcarrier_spacing_hz)},
      {"power.bs_dbm", channel_real(&ChannelParams::bs_power_dbm)},
      {"noise.density_dbm_hz", channel_real(&ChannelParams::noise_density_dbm_hz)},
      {"link.ber", channel_real(&ChannelParams::ber)},
      {"pfr.alpha", real(&SimConfig::pfr_alpha)},
      {"pfr.samples", integer(&SimConfig::alpha_samples)},
      {"pfr.grid_step", real(&SimConfig::alpha_grid_step)},
      {"pfr.sinr_domain",
       {[](SimConfig& c, std::string_view k, std::string_view v) {
          const std::string_view s = trim(v);
          if (s == "db") {
            c.alpha_domain = SinrDomain::Decibel;
          } else if (s == "linear") {
            c.alpha_domain = SinrDomain::Linear;
          } else {
            throw ConfigError(std::string(k), "pfr.sinr_domain must be 'db' or 'linear'");
          }
        },
        [](const SimConfig& c) {
          return std::string(c.alpha_domain == SinrDomain::Decibel ? "db" : "linear");
        }}},
      {"pfr.include_shadowing",
       {[](SimConfig& c, std::string_view k, std::string_view v) {
          c.alpha_include_shadowing = parse_bool(k, v);
        },
        [](const SimConfig& c) { return std::string(c.alpha_include_shadowing ? "true" : "false"); }}},
      {"mobility.x_max_m", real(&SimConfig::x_max_m)},
      {"mobility.grid_step_m", real(&SimConfig::grid_step_m)},
      {"lifetime.exponents",
       {[](SimConfig& c, std::string_view k, std::string_view v) {
          c.lifetime_exponents = parse_list<double>(k, v, parse_double);
        },
        [](const SimConfig& c) { return fmt_list(c.lifetime_exponents); }}},
      {"lifetime.pfr_areas",
       {[](SimConfig& c, std::string_view k, std::string_view v) {
          c.pfr_profile_areas = parse_list<int>(k, v, parse_int<int>);
        },
        [](const SimConfig& c) { return fmt_list(c.pfr_profile_areas); }}},
      {"area.boundaries_m",
       {[](SimConfig& c, std::string_view k, std::string_view v) {
          c.area_boundaries_m = parse_list<double>(k, v, parse_double);
        },
        [](const SimConfig& c) { return fmt_list(c.area_boundaries_m); }}},
      {"edge.threshold_db", real(&SimConfig::edge_threshold_db)},
      {"edge.node_counts",
       {[](SimConfig& c, std::string_view k, std::string_view v) {
          c.edge_node_counts = parse_list<int>(k, v, parse_int<int>);
        },
        [](const SimConfig& c) { return fmt_list(c.edge_node_counts); }}},
      {"sim.seed",
       {[](SimConfig& c, std::string_view k, std::string_view v) {
          c.seed = parse_int<std::uint64_t>(k, v);
        },
        [](const SimConfig& c) { return std::to_string(c.seed); }}},
      {"sim.trials", integer(&SimConfig::trials)},
      {"sim.nodes", integer(&SimConfig::nodes)},
  };
  return table;
}

const Field& field(std::string_view key) {
  for (const auto& [name, f] : field_table()) {
    if (name == key) return f;
  }
  throw ConfigError(std::string(key), "unknown configuration key '" + std::string(key) + "'");
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& entry : field_table()) out.push_back(entry.first);
    return out;
  }();
  return keys;
}

void set_config_value(SimConfig& config, std::string_view key, std::string_view value) {
  field(key).set(config, key, value);
}

std::string config_value(const SimConfig& config, std::string_view key) {
  return field(key).get(config);
}

ConfigLoad parse_config_text(std::string_view text) {
  ConfigLoad load;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(line), "line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (!seen.insert(key).second) throw ConfigError(key, "key '" + key + "' given twice");
    set_config_value(load.config, key, line.substr(eq + 1));
  }
  for (const std::string& key : config_keys()) {
    if (!seen.count(key)) load.defaulted_keys.push_back(key);
  }
  return load;
}

ConfigLoad load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace mcsim
