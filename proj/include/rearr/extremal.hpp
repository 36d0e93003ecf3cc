#pragma once

#include "rearr/partition.hpp"
#include "rearr/step_function.hpp"

namespace rearr {

// Critical point-matching threshold of Th. 2.1: sup over n <= depth (n >= 1)
// of min over m of max(b_n/b*_m, b*_m/b_n). Propagates TailDominates.
Rational min_delta(const IntervalPartition& b, long depth);

// Algebraic golden-ratio test: x <= (sqrt(5)+1)/2 iff x^2 <= x + 1 (for x > 0).
bool leq_golden_ratio(const Rational& x);

struct GoldenWitness {
  IntervalPartition partition;   // finite explicit witness
  Rational alpha_approx;         // rational approximant of the golden ratio
  Rational alpha_error_bound;    // |alpha - alpha_approx| <= this
  Rational predicted_min_delta;  // (alpha~ - 1) / (2 - alpha~ + eps), exact on the witness
  Rational delta_error_bound;    // |predicted - exact-alpha formula| <= this
};

// Th. 2.1 witness: lengths 2-a, a-1-eps, eps 2^{-n+2}; requires 0 < eps < 1/10.
GoldenWitness golden_witness(const Rational& eps, long depth);

// Th. 2.2 functional: max over materialized points b_n of psi(b_n)/psi_{B*}(b_n),
// where psi is the prefix integral of f and psi_{B*} that of E(f|B*).
Rational psi_ratio_sup(const StepFunction& f, const IntervalPartition& b, long depth);

struct FourThirdsWitness {
  StepFunction f;
  IntervalPartition partition;
  Rational predicted_ratio;  // (8 - 6 eps) / (6 - 3 eps)
};

// Th. 2.2 witness; requires 0 < eps < 1/3.
FourThirdsWitness four_thirds_witness(const Rational& eps, long depth);

}  // namespace rearr
