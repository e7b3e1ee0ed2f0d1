#pragma once

#include <cstdint>
#include <vector>

#include "mcsim/channel.h"
#include "mcsim/geometry.h"
#include "mcsim/rng.h"

namespace mcsim {

/// Scale on which the SINR mean and variance are taken.
enum class SinrDomain { Decibel, Linear };

struct AlphaObjectivePoint {
  double alpha = 0.0;
  double mean_sinr = 0.0;
  double var_sinr = 0.0;
  /// mean_sinr / var_sinr
  double objective = 0.0;
};

struct AlphaSearchOptions {
  int n_samples = 10000;
  double grid_step = 0.001;
  SinrDomain domain = SinrDomain::Decibel;
  /// Draw a fresh shadowing realisation per sample. Off means the objective
  /// sees path loss only.
  bool include_shadowing = false;
  int total_subcarriers = 300;
};

/// Node positions in cell 1 with their SINR on the inner band and on the
/// cell's outer band. The same set is reused for every alpha of a sweep, so
/// objective differences come from alpha alone.
class AlphaSampleSet {
 public:
  AlphaSampleSet(std::vector<double> distance_m, std::vector<double> inner_sinr,
                 std::vector<double> outer_sinr, double cell_radius);

  static AlphaSampleSet draw(const CellLayout& layout, const ChannelParams& params,
                             const AlphaSearchOptions& options, Rng& rng);

  /// Each sample takes the inner SINR iff its distance <= alpha * R. Throws
  /// DomainError when the resulting variance is zero.
  AlphaObjectivePoint evaluate(double alpha, SinrDomain domain) const;

  std::size_t size() const { return distance_m_.size(); }

 private:
  std::vector<double> distance_m_;
  std::vector<double> inner_linear_;
  std::vector<double> outer_linear_;
  std::vector<double> inner_db_;
  std::vector<double> outer_db_;
  double cell_radius_;
};

AlphaObjectivePoint alpha_objective(double alpha, const CellLayout& layout,
                                    const ChannelParams& params, const AlphaSearchOptions& options,
                                    Rng& rng);

/// {step, 2 step, ...} strictly inside (0, 1).
std::vector<double> alpha_grid(double grid_step);

struct AlphaSearchResult {
  double alpha_opt = 0.0;
  AlphaObjectivePoint best;
  std::vector<AlphaObjectivePoint> sweep;
};

/// Grid argmax of the objective over one common sample set drawn from
/// `seed`; ties go to the smaller alpha.
AlphaSearchResult optimize_alpha(const CellLayout& layout, const ChannelParams& params,
                                 const AlphaSearchOptions& options, std::uint64_t seed);

}  // namespace mcsim
