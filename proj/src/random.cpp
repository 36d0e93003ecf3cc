#include "rearr/random.hpp"

#include <algorithm>
#include <set>

namespace rearr {

IntervalPartition random_partition(Rng& rng, long max_cells, long denom) {
  const long cells = rng.range(2, max_cells);
  std::set<long> cuts;
  while (static_cast<long>(cuts.size()) < cells - 1) {
    const long j = rng.range(1, denom - 1);
    cuts.insert(j);
  }
  std::vector<Rational> pts{Rational(1)};
  for (auto it = cuts.rbegin(); it != cuts.rend(); ++it) pts.push_back(Rational(*it, denom));
  pts.push_back(Rational(0));
  return IntervalPartition::explicit_points(std::move(pts));
}

StepFunction random_step(Rng& rng, long max_pieces, long denom, long vmax, bool nonincreasing) {
  const long pieces = rng.range(1, max_pieces);
  std::set<long> cuts;
  while (static_cast<long>(cuts.size()) < pieces - 1) cuts.insert(rng.range(1, denom - 1));
  std::vector<Rational> breaks{Rational(1)};
  for (auto it = cuts.rbegin(); it != cuts.rend(); ++it) breaks.push_back(Rational(*it, denom));
  breaks.push_back(Rational(0));
  std::vector<long> vals;
  for (long i = 0; i < pieces; ++i) vals.push_back(rng.range(0, vmax));
  if (nonincreasing) std::sort(vals.begin(), vals.end());  // larger values near 0
  std::vector<Rational> values;
  for (long v : vals) values.push_back(Rational(v));
  return StepFunction(std::move(breaks), std::move(values));
}

}  // namespace rearr
