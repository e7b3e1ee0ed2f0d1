#include "mcsim/csv.h"

#include <cmath>
#include <cstdio>

namespace mcsim {

std::string format_number(double value, Precision precision) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, precision == Precision::Full ? "%.17g" : "%.6g", value);
  return buf;
}

void write_sinr_map(std::ostream& out, std::span<const SinrMapRow> rows, Precision p) {
  out << kSinrMapHeader << '\n';
  for (const auto& r : rows) {
    out << scheme_name(r.scheme) << ',' << r.node_id << ',' << format_number(r.distance_m, p) << ','
        << format_number(r.sinr_db, p) << '\n';
  }
}

void write_edge_capacity(std::ostream& out, std::span<const EdgeCapacityRow> rows, Precision p) {
  out << kEdgeCapacityHeader << '\n';
  for (const auto& r : rows) {
    out << scheme_name(r.scheme) << ',' << r.num_nodes << ',' << r.trial << ','
        << format_number(r.avg_edge_capacity_bps, p) << '\n';
  }
}

void write_mobility(std::ostream& out, std::span<const MobilityRow> rows, Precision p) {
  out << kMobilityHeader << '\n';
  for (const auto& r : rows) {
    out << scheme_name(r.scheme) << ',' << r.area << ',' << r.node_id << ','
        << format_number(r.initial_distance_m, p) << ',' << format_number(r.x_opt_m, p) << ','
        << format_number(r.final_distance_m, p) << ',' << format_number(r.normalized_move, p) << '\n';
  }
}

void write_alpha_sweep(std::ostream& out, std::span<const AlphaObjectivePoint> rows, Precision p) {
  out << kAlphaSweepHeader << '\n';
  for (const auto& r : rows) {
    out << format_number(r.alpha, p) << ',' << format_number(r.mean_sinr, p) << ','
        << format_number(r.var_sinr, p) << ',' << format_number(r.objective, p) << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cell);
      cell.clear();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  out.push_back(cell);
  return out;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (std::getline(in, line)) table.header = split(line);
  while (std::getline(in, line)) {
    if (!line.empty()) table.rows.push_back(split(line));
  }
  return table;
}

}  // namespace mcsim
