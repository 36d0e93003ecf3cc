#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rearr/partition.hpp"
#include "rearr/step_function.hpp"

namespace rearr {

// Rule n -> q_n >= 1. Kind metadata is kept for serialization.
struct QSequence {
  std::function<long(long)> rule;  // n >= 1
  std::string kind;                // "const" | "affine" | "square" | "explicit" | transform names
  std::vector<long> params;

  long operator()(long n) const { return rule(n); }

  static QSequence constant(long c);
  static QSequence affine(long a, long b);  // q_n = a*n + b
  static QSequence square();                // q_n = n^2
  static QSequence explicit_values(std::vector<long> values);
};

// Strictly decreasing v_0 = 1 > v_1 > ... > v_K > 0 subject to (1.5):
// v_k - v_{k+1} >= (v_{k-1} - v_k)/2.
struct VSequence {
  std::vector<Rational> v;
  bool satisfies_gap_rule() const;
};

// Certificate-style result: finite value, or a threshold crossing at `value`.
struct Cert {
  bool finite = true;
  Rational value;
  long depth = 0;
  bool lower_bound_only = false;  // truncated family without a closed tail
};

// sup of f(t/2)/f(t) over the support, f non-increasing.
Cert weak_reg_constant(const StepFunction& f, const std::optional<Rational>& threshold = std::nullopt);
Cert weak_reg_constant(const DyadicFamily& f, long depth, const std::optional<Rational>& threshold = std::nullopt);

// sup of f**(t)/f*(t), f non-increasing.
Cert reg_constant(const StepFunction& f, const std::optional<Rational>& threshold = std::nullopt);
Cert reg_constant(const DyadicFamily& f, long depth, const std::optional<Rational>& threshold = std::nullopt);

// Modular n_f(x) = inf{ s >= 1 : x*(t) <= s f*(t/s) }, with n_f(0) = 0.
// Exact: the infimum is attained at a rational candidate. Throws DomainError
// when f is identically zero and x is not.
Rational modular(const StepFunction& f, const StepFunction& x);

// Count of psi(p_n) (p_n the materialized points of P, psi normalized so that
// psi(1) = 1) in the dyadic cell [2^-k, 2^-k+1).
long q_psi_count(const StepFunction& f, const IntervalPartition& p, long k, long depth);

// Count of v_j (j >= 1) in [2^-k, 2^-k+1).
long count_v_in_cell(const VSequence& v, long k);

// Lemma 1.9 synthesis from a q-sequence. `depth` is the number of v-gaps to
// produce (v_0..v_depth, dyadic values a_1..a_depth). The family's psi at
// dyadic points is exact: psi(2^-k) = v_k.
struct Synthesis {
  VSequence v;
  DyadicFamily g;
  long depth = 0;
  // realized counts per rank 1..max_rank (may differ from q near a repaired
  // junction; see realized_matches_input)
  std::vector<long> realized_counts;
  bool junction_repaired = false;
};
Synthesis synthesize_from_q(const QSequence& q, long depth);

// Th. 1.6(1): weakly regular envelope with ratio c = 2 + eps.
// Input family non-increasing (values non-decreasing); output values on
// D_1..depth with f* <= g, g(t/2) <= c g(t), and the (1.3) mass bound.
DyadicFamily envelope_weakly_regular(const DyadicFamily& f, const Rational& eps, long depth);

// Th. 1.15: sup(g** - g) and the criterion-(iii) companion sup(g(t/2) - g(t)).
struct BmoGap {
  Rational gap;        // sup g**(t) - g(t)
  Rational companion;  // sup g(t/2) - g(t)
};
BmoGap bmo_gap(const StepFunction& g);
BmoGap bmo_gap(const DyadicFamily& g, long depth);

}  // namespace rearr
