#include "mcsim/pfr_opt.h"

#include <cmath>

#include "mcsim/errors.h"
#include "mcsim/link.h"
#include "mcsim/spectrum.h"

namespace mcsim {

AlphaSampleSet::AlphaSampleSet(std::vector<double> distance_m, std::vector<double> inner_sinr,
                               std::vector<double> outer_sinr, double cell_radius)
    : distance_m_(std::move(distance_m)),
      inner_linear_(std::move(inner_sinr)),
      outer_linear_(std::move(outer_sinr)),
      cell_radius_(cell_radius) {
  if (distance_m_.size() != inner_linear_.size() || distance_m_.size() != outer_linear_.size()) {
    throw InvalidParameter("sample vectors differ in length");
  }
  if (distance_m_.size() < 2) throw InvalidParameter("alpha objective needs at least 2 samples");
  inner_db_.reserve(size());
  outer_db_.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    inner_db_.push_back(to_db(inner_linear_[i]));
    outer_db_.push_back(to_db(outer_linear_[i]));
  }
}

AlphaSampleSet AlphaSampleSet::draw(const CellLayout& layout, const ChannelParams& params,
                                    const AlphaSearchOptions& options, Rng& rng) {
  if (options.n_samples < 2) throw InvalidParameter("alpha objective needs at least 2 samples");
  // Band sizes do not enter the SINR; any partial plan exposes both bands.
  const Downlink downlink(layout, build_plan(options.total_subcarriers, ReuseScheme::partial(0.5)),
                          params);
  const Cell& home = layout.cell(1);
  const BandId outer = BandId::outer(home.outer_color);

  std::vector<double> dist, inner, outer_sinr;
  dist.reserve(static_cast<std::size_t>(options.n_samples));
  inner.reserve(dist.capacity());
  outer_sinr.reserve(dist.capacity());
  std::vector<double> shadow(layout.size(), 0.0);
  NodeState node;
  node.serving_cell = home.id;
  for (int i = 0; i < options.n_samples; ++i) {
    const Point2D p = sample_uniform_in_cell(home, layout, rng);
    if (options.include_shadowing) {
      for (double& s : shadow) s = rng.normal(0.0, params.shadowing_sigma_db);
    }
    node.id = i;
    dist.push_back(distance(p, home.center));
    inner.push_back(downlink.sinr(node, p, BandId::inner(), shadow).sinr_linear);
    outer_sinr.push_back(downlink.sinr(node, p, outer, shadow).sinr_linear);
  }
  return AlphaSampleSet(std::move(dist), std::move(inner), std::move(outer_sinr),
                        layout.cell_radius());
}

AlphaObjectivePoint AlphaSampleSet::evaluate(double alpha, SinrDomain domain) const {
  const bool db = domain == SinrDomain::Decibel;
  const auto& in = db ? inner_db_ : inner_linear_;
  const auto& out = db ? outer_db_ : outer_linear_;
  const double boundary = alpha * cell_radius_;
  const auto value = [&](std::size_t i) { return distance_m_[i] <= boundary ? in[i] : out[i]; };

  const auto n = static_cast<double>(size());
  double mean = 0.0;
  for (std::size_t i = 0; i < size(); ++i) mean += value(i);
  mean /= n;
  double ss = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const double d = value(i) - mean;
    ss += d * d;
  }
  const double var = ss / (n - 1.0);
  if (!(var > 0.0)) throw DomainError("SINR samples have zero variance");
  return {alpha, mean, var, mean / var};
}

AlphaObjectivePoint alpha_objective(double alpha, const CellLayout& layout,
                                    const ChannelParams& params, const AlphaSearchOptions& options,
                                    Rng& rng) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidParameter("alpha must lie in (0, 1)");
  return AlphaSampleSet::draw(layout, params, options, rng).evaluate(alpha, options.domain);
}

std::vector<double> alpha_grid(double grid_step) {
  if (!(grid_step > 0.0 && grid_step < 0.5)) throw InvalidParameter("alpha grid step must lie in (0, 0.5)");
  std::vector<double> grid;
  for (int k = 1;; ++k) {
    const double a = k * grid_step;
    if (a >= 1.0 - 1e-12) break;
    grid.push_back(a);
  }
  return grid;
}

AlphaSearchResult optimize_alpha(const CellLayout& layout, const ChannelParams& params,
                                 const AlphaSearchOptions& options, std::uint64_t seed) {
  const std::vector<double> grid = alpha_grid(options.grid_step);
  Rng rng(seed);
  const AlphaSampleSet samples = AlphaSampleSet::draw(layout, params, options, rng);

  AlphaSearchResult result;
  result.sweep.reserve(grid.size());
  for (double a : grid) {
    const AlphaObjectivePoint pt = samples.evaluate(a, options.domain);
    if (result.sweep.empty() || pt.objective > result.best.objective) result.best = pt;
    result.sweep.push_back(pt);
  }
  result.alpha_opt = result.best.alpha;
  return result;
}

}  // namespace mcsim
