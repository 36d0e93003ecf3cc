#pragma once

#include <optional>
#include <vector>

#include "rearr/partition.hpp"
#include "rearr/step_function.hpp"

namespace rearr {

// E(f|B): cell averages of f over the materialized cells of B. When the
// partition is truncated and f has mass below b_depth, the region (0, b_depth]
// is averaged as one final cell; `tail_was_averaged` reports that.
struct CondExpResult {
  StepFunction fn;
  bool tail_was_averaged = false;
};

CondExpResult cond_exp_full(const StepFunction& f, const IntervalPartition& b, long depth);
StepFunction cond_exp(const StepFunction& f, const IntervalPartition& b, long depth);

// Profile of the independent-complement average: g(s) = sum_n beta_n f(b_n + beta_n s),
// a step function in the complement coordinate s. Exact for finite partitions;
// for truncated ones the tail contribution is bounded by tail_mass * max|f| and
// must fit under `tol` (absent tol => finite partition required).
StepFunction perp_avg_profile(const StepFunction& f, const IntervalPartition& b, long depth,
                              const std::optional<Rational>& tol = std::nullopt);

// The profile copied affinely into every cell of B: the conditional expectation
// E(f|B-perp) as a function on (0,1]. Equimeasurable with the profile.
StepFunction perp_avg_pullback(const StepFunction& f, const IntervalPartition& b, long depth,
                               const std::optional<Rational>& tol = std::nullopt);

// Dilate f within each cell's affine coordinate: t = b_n + beta_n s maps to
// f(b_n + beta_n (a s)). This is the dilation the complement-average profile
// intertwines with rho_a on profiles.
StepFunction cell_dilate(const StepFunction& f, const IntervalPartition& b, long depth, const Rational& a);

// Rank-k B-adic refinement cell.
struct BAdicAddress {
  std::vector<long> digits;  // i_0 .. i_k, all >= 1
  Rational lo, hi;           // the cell (lo, hi]
  Rational length() const { return hi - lo; }
};

// All rank-k addresses with every digit <= prefix, lexicographic order, with
// exact endpoints. Covered mass = (sum_{n<=prefix} beta_n)^{k+1}.
std::vector<BAdicAddress> badic_refine(const IntervalPartition& b, long k, long prefix);

struct BAdicPoint {
  std::vector<long> digits;       // i_0 .. i_k
  std::vector<Rational> iterates; // phi(t), phi^(2)(t), ..., phi^(k+1)(t)
};

// Digits and iterated complement coordinates of t; reconstruction is exact.
BAdicPoint badic_map(const IntervalPartition& b, const Rational& t, long k, long prefix);
Rational badic_reconstruct(const IntervalPartition& b, const BAdicPoint& p);

// E(f | B^(k)) on the covered region (0 outside), plus covered mass.
struct BAdicCondExp {
  StepFunction fn;
  Rational covered_mass;
};
BAdicCondExp cond_exp_badic(const StepFunction& f, const IntervalPartition& b, long k, long prefix);

// L1 distance between f and g restricted to the rank-k covered cells.
Rational l1_error_on_cells(const StepFunction& f, const StepFunction& g,
                           const std::vector<BAdicAddress>& cells);

// Joint realization of a countable partition with its independent complement:
// weighted atoms, each carrying a function of the complement coordinate.
struct JointRealization {
  std::vector<Rational> weights;        // positive, summing to 1
  std::vector<StepFunction> functions;  // per-atom f(a_n, .)
};

// E(f|A-perp)(t) = sum_n alpha_n f(a_n, t).
StepFunction product_avg(const JointRealization& j);

// Floor/ceiling projections of a non-increasing f on B's cells (Ch. 4):
// f_B = f(b_{n-1}) on (b_n, b_{n-1}], f**_B = f**(b_n) on (b_n, b_{n-1}]
// (limit value at b_n = 0).
struct FloorCeil {
  StepFunction floor_fn;
  StepFunction ceil_fn;
};
FloorCeil floor_ceil_projections(const StepFunction& f, const IntervalPartition& b, long depth);

}  // namespace rearr
