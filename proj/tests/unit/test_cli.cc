#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mcsim/cli.h"
#include "mcsim/config.h"
#include "mcsim/csv.h"

using namespace mcsim;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mcsim_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "mcsim-cli");
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("parse_config_text") {
  const ConfigLoad load = parse_config_text(
      "# comment\n"
      "pfr.alpha = 0.5\n"
      "sim.nodes=14   # trailing\n"
      "lifetime.exponents = 1, 2, 3, 4\n");
  CHECK(load.config.pfr_alpha == 0.5);
  CHECK(load.config.nodes == 14);
  CHECK(load.config.lifetime_exponents == std::vector<double>{1, 2, 3, 4});
  CHECK(std::find(load.defaulted_keys.begin(), load.defaulted_keys.end(), "pfr.alpha") ==
        load.defaulted_keys.end());
  CHECK(load.defaulted_keys.size() == config_keys().size() - 3);
}

TEST_CASE("config errors name the key") {
  try {
    parse_config_text("pfr.alhpa = 0.5\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "pfr.alhpa");
  }
  CHECK_THROWS_AS(parse_config_text("sim.nodes = 3\nsim.nodes = 4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("sim.nodes = many\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("just words\n"), ConfigError);
}

TEST_CASE("config values round-trip through text") {
  SimConfig c;
  c.pfr_alpha = 0.123456789012345;
  c.channel.shadowing_sigma_db = 6.5;
  std::string text;
  for (const std::string& key : config_keys()) text += key + " = " + config_value(c, key) + "\n";
  const ConfigLoad back = parse_config_text(text);
  CHECK(back.defaulted_keys.empty());
  CHECK(config_hash(back.config) == config_hash(c));
}

TEST_CASE("format_number") {
  CHECK(format_number(0.467, Precision::SixDigits) == "0.467");
  CHECK(format_number(30861.912345, Precision::SixDigits) == "30861.9");
  CHECK(format_number(std::nan(""), Precision::SixDigits) == "nan");
  CHECK(format_number(-0.0, Precision::SixDigits) == "0");
  const double v = 0.1 + 0.2;
  CHECK(std::stod(format_number(v, Precision::Full)) == v);
}

TEST_CASE("usage errors exit 2") {
  std::string err;
  CHECK(run({}, nullptr, &err) == kExitUsage);
  CHECK(run({"optimize-alpha", "--bogus"}, nullptr, &err) == kExitUsage);
  CHECK(run({"sinr-map", "--scheme", "frf7"}, nullptr, &err) == kExitUsage);
  CHECK(run({"mobility-stats", "--scheme", "frf1"}, nullptr, &err) == kExitUsage);

  const fs::path dir = scratch("badkey");
  std::ofstream(dir / "bad.cfg") << "sim.nodez = 3\n";
  CHECK(run({"sinr-map", "--config", (dir / "bad.cfg").string(), "--out", dir.string()}, nullptr, &err) ==
        kExitUsage);
  CHECK(err.find("sim.nodez") != std::string::npos);
}

TEST_CASE("I/O errors exit 1") {
  const fs::path dir = scratch("io");
  std::ofstream(dir / "file") << "x";
  std::string err;
  CHECK(run({"sinr-map", "--trials", "1", "--out", (dir / "file" / "sub").string()}, nullptr, &err) == kExitIo);
  CHECK(run({"sinr-map", "--config", (dir / "missing.cfg").string()}, nullptr, &err) == kExitIo);
}

TEST_CASE("optimize-alpha writes a sweep and a summary") {
  const fs::path dir = scratch("alpha");
  std::string out, err;
  REQUIRE(run({"optimize-alpha", "--out", dir.string(), "--seed", "3"}, &out, &err) == kExitOk);
  CHECK(out.find("alpha_opt=") != std::string::npos);
  CHECK(err.find("mcsim: default pfr.samples = 10000") != std::string::npos);
  std::ifstream in(dir / "alpha_sweep.csv");
  const CsvTable t = read_csv(in);
  CHECK(t.header.size() == 4);
  CHECK(t.rows.size() == 999);
}

TEST_CASE("sinr-map CSV matches the report and is byte-identical on rerun") {
  const fs::path a = scratch("map_a");
  const fs::path b = scratch("map_b");
  const std::vector<std::string> common{"sinr-map", "--trials", "2", "--nodes", "10", "--seed", "4"};
  auto with_out = [&](const fs::path& d) {
    std::vector<std::string> v = common;
    v.push_back("--out");
    v.push_back(d.string());
    return v;
  };
  REQUIRE(run(with_out(a)) == kExitOk);
  REQUIRE(run(with_out(b)) == kExitOk);
  CHECK(slurp(a / "sinr_map.csv") == slurp(b / "sinr_map.csv"));

  SimConfig c;
  c.trials = 2;
  c.nodes = 10;
  c.seed = 4;
  const std::vector<Scheme> schemes(std::begin(kAllSchemes), std::end(kAllSchemes));
  const std::vector<int> counts{10};
  const MetricsReport rep = run_experiment(c, schemes, counts);
  std::ifstream in(a / "sinr_map.csv");
  const CsvTable t = read_csv(in);
  CHECK(t.header == std::vector<std::string>{"scheme", "node_id", "distance_m", "sinr_db"});
  REQUIRE(t.rows.size() == rep.sinr_map.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t.rows[i][0] == scheme_name(rep.sinr_map[i].scheme));
    CHECK(std::stoi(t.rows[i][1]) == rep.sinr_map[i].node_id);
    CHECK(std::stod(t.rows[i][3]) == doctest::Approx(rep.sinr_map[i].sinr_db).epsilon(5e-6));
  }
}

TEST_CASE("full precision round-trips exactly") {
  const fs::path dir = scratch("full");
  REQUIRE(run({"mobility-stats", "--trials", "1", "--nodes", "8", "--scheme", "mc-frf1", "--precision", "full",
               "--out", dir.string()}) == kExitOk);
  SimConfig c;
  c.trials = 1;
  c.nodes = 8;
  const std::vector<Scheme> schemes{Scheme::McFrf1};
  const std::vector<int> counts{8};
  const MetricsReport rep = run_experiment(c, schemes, counts);
  std::ifstream in(dir / "mobility.csv");
  const CsvTable t = read_csv(in);
  REQUIRE(t.rows.size() == rep.mobility.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(std::stod(t.rows[i][3]) == rep.mobility[i].initial_distance_m);
    CHECK(std::stod(t.rows[i][6]) == rep.mobility[i].normalized_move);
  }
}

TEST_CASE("edge-capacity writes one row per node count and trial") {
  const fs::path dir = scratch("edge");
  std::string out;
  REQUIRE(run({"edge-capacity", "--scheme", "frf1,pfr", "--trials", "3", "--out", dir.string()}, &out) == kExitOk);
  std::ifstream in(dir / "edge_capacity.csv");
  const CsvTable t = read_csv(in);
  CHECK(t.header.size() == 4);
  CHECK(t.rows.size() == 2 * 10 * 3);
  CHECK(out.find("edge-capacity:") != std::string::npos);
}
