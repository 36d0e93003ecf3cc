#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rearr/rational.hpp"

namespace rearr {

// Piecewise-constant function on (0,1] with finitely many pieces.
//
// breakpoints 1 = t_0 > t_1 > ... > t_N >= 0; value(i) holds on (t_{i+1}, t_i]
// (half-open: a breakpoint belongs to the piece on its left, toward 1).
// If t_N > 0 the function is 0 on (0, t_N], and canonical form requires the
// innermost explicit value to be nonzero; adjacent equal values are merged.
class StepFunction {
 public:
  // Zero function.
  StepFunction();
  // breaks.front() must be 1 and breaks strictly decreasing, breaks.back() >= 0,
  // values.size() + 1 == breaks.size(). Canonicalizes.
  StepFunction(std::vector<Rational> breaks, std::vector<Rational> values);

  static StepFunction constant(const Rational& c);
  // Indicator of (0, b] scaled by c.
  static StepFunction box(const Rational& c, const Rational& b);

  std::size_t pieces() const { return values_.size(); }
  const std::vector<Rational>& breaks() const { return breaks_; }
  const std::vector<Rational>& values() const { return values_; }
  // Left endpoint of explicit piece i: breaks_[i+1].
  const Rational& lower(std::size_t i) const { return breaks_[i + 1]; }
  const Rational& upper(std::size_t i) const { return breaks_[i]; }
  const Rational& value(std::size_t i) const { return values_[i]; }
  // Innermost explicit breakpoint (the function is 0 on (0, tail_break()]).
  const Rational& tail_break() const { return breaks_.back(); }

  bool is_zero() const { return values_.empty(); }
  bool is_nonnegative() const;
  bool is_nonincreasing() const;
  // Non-increasing apart from an implicit zero region near 0 (a truncated
  // family materialization).
  bool is_nonincreasing_on_support() const;
  // Largest |value|; 0 for the zero function.
  Rational max_abs() const;
  // sup f on (0, epsilon): the innermost value (0 if there is a zero tail).
  Rational value_near_zero() const;

  friend bool operator==(const StepFunction& a, const StepFunction& b) {
    return a.breaks_ == b.breaks_ && a.values_ == b.values_;
  }
  friend bool operator!=(const StepFunction& a, const StepFunction& b) { return !(a == b); }

 private:
  std::vector<Rational> breaks_;
  std::vector<Rational> values_;
  void canonicalize();
};

// f(t) for t in (0,1].
Rational evaluate(const StepFunction& f, const Rational& t);

// Integral over (0,1].
Rational integral(const StepFunction& f);

// psi(t) = integral of f over (0,t], 0 <= t <= 1.
Rational prefix_integral(const StepFunction& f, const Rational& t);

// Non-increasing rearrangement of |f| (largest values near 0).
StepFunction rearrange_decreasing(const StepFunction& f);

// (rho_s f)(t) = f(st) if st <= 1 else 0. s > 0.
StepFunction dilate(const StepFunction& f, const Rational& s);

StepFunction add(const StepFunction& f, const StepFunction& g);
StepFunction subtract(const StepFunction& f, const StepFunction& g);
StepFunction scale(const StepFunction& f, const Rational& c);
StepFunction abs(const StepFunction& f);

// Pointwise f <= g everywhere on (0,1].
bool step_leq(const StepFunction& f, const StepFunction& g);

Rational l1_distance(const StepFunction& f, const StepFunction& g);

// f**(t) = (1/t) * integral of f* over (0,t].
Rational double_star(const StepFunction& f, const Rational& t);
// lim_{t->0} f**(t) = top value of f*.
Rational double_star_limit_at_zero(const StepFunction& f);
// Step function sampling f** at the given grid: value f**(g_i) on (g_i, g_{i-1}]
// for strictly decreasing grid points 1 = g_0 > ... > g_M > 0.
StepFunction double_star_fn(const StepFunction& f, const std::vector<Rational>& grid);

// y majorized by x: prefix integrals of y* never exceed those of x*.
bool majorizes(const StepFunction& x, const StepFunction& y);

bool equimeasurable(const StepFunction& f, const StepFunction& g);

// Exact prefix-integral table for one function; O(log n) psi queries.
class PsiTable {
 public:
  explicit PsiTable(const StepFunction& f);
  Rational operator()(const Rational& t) const;

 private:
  // ascending breakpoints with cumulative integrals from 0
  std::vector<Rational> pts_;
  std::vector<Rational> cum_;
  std::vector<Rational> vals_;  // value on (pts_[i-1], pts_[i]]
};

// Union of the breakpoint sets (descending, deduplicated, both tails included).
std::vector<Rational> merged_breakpoints(const StepFunction& f, const StepFunction& g);

// ---------------------------------------------------------------------------
// Dyadic-measurable families: value a_n on D_n = (2^-n, 2^-{n+1}]... (paper's
// D_n = (2^-n, 2^-n+1]), given by a rule so that sups over all n become exact
// prefix statistics. Materialization at `depth` yields the step function equal
// to a_n on D_n for n <= depth and 0 on (0, 2^-depth].
struct DyadicFamily {
  std::function<Rational(long)> value;  // a_n, n >= 1
  // Exact tail mass sum_{k>n} a_k 2^-k when a closed form exists.
  std::function<Rational(long)> exact_tail;
  // Exact psi(2^-n) for synthesized families (Lemma 1.9: v_n).
  std::function<Rational(long)> exact_psi_dyadic;
  // Declared upper bound on the tail mass at depth n (>= truth); defaults to
  // exact_tail when present.
  std::function<Rational(long)> tail_bound;

  StepFunction materialize(long depth) const;
  // Materialization with the innermost value continued constantly to 0, so the
  // result is genuinely non-increasing on all of (0,1].
  StepFunction materialize_extended(long depth) const;
  // psi(2^-n): exact when exact_psi_dyadic or exact_tail present, otherwise
  // the materialized lower bound at `depth`.
  Rational psi_dyadic(long n, long depth) const;
  bool has_exact_psi() const { return static_cast<bool>(exact_psi_dyadic) || static_cast<bool>(exact_tail); }

  static DyadicFamily constant(const Rational& c);
  // a_n = first * ratio^{n-1}; closed-form tail requires ratio < 2.
  static DyadicFamily geometric(const Rational& first, const Rational& ratio);
  // a_n = 2^n / n^2.
  static DyadicFamily pow2_over_square();
  // a_n = n * h (exact tail: h (n+2) 2^-n).
  static DyadicFamily linear(const Rational& h);
  static DyadicFamily explicit_values(std::vector<Rational> values);
};

}  // namespace rearr
