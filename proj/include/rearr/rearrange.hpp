#pragma once

#include <optional>
#include <vector>

#include "rearr/partition.hpp"
#include "rearr/step_function.hpp"

namespace rearr {

// Left-to-right piecewise-constant function on a closed interval [a,b].
struct Segment {
  struct Piece {
    Rational lo, hi;  // contiguous, ascending
    Rational value;
  };
  std::vector<Piece> pieces;

  Rational a() const { return pieces.front().lo; }
  Rational b() const { return pieces.back().hi; }
  Rational integral() const;
  Rational integral_on(const Rational& lo, const Rational& hi) const;
  Rational value_at(const Rational& t) const;  // t in (a,b]: piece containing t
  // multiset of (value,length) with equal values merged
  std::vector<std::pair<Rational, Rational>> mass() const;
  void validate() const;
};

bool segments_equimeasurable(const Segment& f, const Segment& g);

// f restricted to (lo,hi] taken from a function on (0,1].
Segment restrict_to(const StepFunction& f, const Rational& lo, const Rational& hi);
// Reassemble contiguous segments (descending coverage of (0,1]) into a function.
StepFunction assemble(const std::vector<Segment>& parts);

// One block-structured instance of the Ch. 3 lemmas: target g is constant
// alpha_j >= alpha_{j+1} on block [ends[j-1], ends[j]].
struct BlockInstance {
  Segment f;
  std::vector<Rational> ends;    // t_0 = a < t_1 < ... < t_n = b
  std::vector<Rational> alphas;  // non-increasing, >= 0
  void validate() const;
  Rational g_integral_on(const Rational& lo, const Rational& hi) const;
};

// Lemma 3.3 part I: swap equal-length end intervals [a,a+r0], [b-r0,b] so that
// the first n-1 block dominations and the [t_1,b] total domination hold.
// Requires the block geometry t_j <= (t_{j-1}+t_{j+1})/2 and hypothesis 3.
struct SwapResult {
  Segment f;
  Rational r0;
};
SwapResult two_block_swap(const BlockInstance& inst);

// Lemma 3.5: from strict prefix domination (all t) to per-block domination,
// via the equal-width refinement and the Lemma 3.3/3.4 induction.
Segment dominate_on_interval(const BlockInstance& inst);

// Lemma 3.6: decreasing sequence r_1 = 1 > r_2 > ... with
// int_{r_n}^t x > int_{r_n}^t y for all t in (r_n, r_{n-1}]. `count` points.
std::vector<Rational> split_points(const StepFunction& x, const StepFunction& y, long count);

// Lemma 3.7: given prefix_integral(x*,t) >= prefix_integral(y,t) and an
// interval partition F on whose cells y is constant, produce xbar ~ x + eps
// with y <= E(xbar|F) exactly.
StepFunction construct_dominating(const StepFunction& x, const StepFunction& y,
                                  const IntervalPartition& f_cells, const Rational& eps);

// Exhaustive oracle on n <= 8 uniform cells. perm_feasible searches cell
// permutations (witness returned); mass_feasible decides feasibility over all
// rearrangements via the 2^n union bounds sum_U y lambda <= int_0^{|U|} x*.
struct OracleVerdict {
  bool perm_feasible = false;
  std::vector<int> witness;  // permutation of cell indices when perm_feasible
  bool mass_feasible = false;
};
OracleVerdict permutation_oracle(const std::vector<Rational>& x_cells,
                                 const std::vector<Rational>& y_cells,
                                 const std::vector<long>& f_cell_of_grid_cell);

}  // namespace rearr
