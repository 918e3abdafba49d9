#pragma once

#include <cstdint>

namespace longmem {

// Counter-based random source: draw i is a pure function of (seed, i), so
// replications can be evaluated in any order, on any number of threads, and
// still produce identical streams. No hidden state, nothing to advance.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed);

  // i-th 64-bit word of the stream.
  std::uint64_t bits(std::uint64_t i) const;

  // i-th uniform draw, strictly inside (0,1).
  double uniform(std::uint64_t i) const;

  // i-th standard normal draw (inverse-CDF transform of uniform(i)).
  double normal(std::uint64_t i) const;

 private:
  std::uint64_t key_;
};

// Quantile of the standard normal distribution, p in (0,1). Accurate to
// roughly 1e-15 over the full range.
double normal_quantile(double p);

}  // namespace longmem
