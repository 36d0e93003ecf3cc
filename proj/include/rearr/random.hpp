#pragma once

#include <cstdint>
#include <vector>

#include "rearr/partition.hpp"
#include "rearr/step_function.hpp"

namespace rearr {

// splitmix64: deterministic across platforms, unlike std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do { v = next(); } while (v >= limit);
    return v % n;
  }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    Rng r(seed ^ (0xa0761d6478bd642fULL * (stream + 1)));
    r.next();
    return r.next();
  }

 private:
  std::uint64_t state_;
};

// Finite random interval partition: points on the grid j/denom, ending at 0.
IntervalPartition random_partition(Rng& rng, long max_cells, long denom);

// Random step function with breakpoints on the grid j/denom and integer values
// in [0, vmax] (sorted to non-increasing when requested).
StepFunction random_step(Rng& rng, long max_pieces, long denom, long vmax, bool nonincreasing);

}  // namespace rearr
