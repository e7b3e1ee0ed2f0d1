#pragma once

#include <cstdint>
#include <random>

namespace mcsim {

/// Seeded random source used by every stochastic operation.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The uniform and normal transforms are done here rather than with
/// <random> distributions, whose algorithms are implementation-defined, so
/// that a seed produces the same drop with any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Box-Muller; the second variate of each pair is cached.
  double normal(double mean, double stddev);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Order-independent per-trial seed: splitmix64 finalizer over (master, index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace mcsim
