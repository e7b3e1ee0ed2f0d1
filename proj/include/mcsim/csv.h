#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mcsim/harness.h"
#include "mcsim/pfr_opt.h"

namespace mcsim {

enum class Precision { SixDigits, Full };

/// printf %.6g (or %.17g), always with '.' as decimal separator.
std::string format_number(double value, Precision precision);

inline constexpr const char* kSinrMapHeader = "scheme,node_id,distance_m,sinr_db";
inline constexpr const char* kEdgeCapacityHeader = "scheme,num_nodes,trial,avg_edge_capacity_bps";
inline constexpr const char* kMobilityHeader =
    "scheme,area,node_id,initial_distance_m,x_opt_m,final_distance_m,normalized_move";
inline constexpr const char* kAlphaSweepHeader = "alpha,mean_sinr,var_sinr,objective";

void write_sinr_map(std::ostream& out, std::span<const SinrMapRow> rows, Precision precision);
void write_edge_capacity(std::ostream& out, std::span<const EdgeCapacityRow> rows, Precision precision);
void write_mobility(std::ostream& out, std::span<const MobilityRow> rows, Precision precision);
void write_alpha_sweep(std::ostream& out, std::span<const AlphaObjectivePoint> rows, Precision precision);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Minimal reader for the files above (no quoting).
CsvTable read_csv(std::istream& in);

}  // namespace mcsim
