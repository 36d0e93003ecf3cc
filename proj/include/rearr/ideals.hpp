#pragma once

#include <optional>
#include <vector>

#include "rearr/partition.hpp"
#include "rearr/regularity.hpp"
#include "rearr/step_function.hpp"

namespace rearr {

// sup_t x**(t)/f**(t), exact (both prefix integrals are piecewise linear).
Rational marcinkiewicz_norm(const StepFunction& x, const StepFunction& f);

struct MembershipVerdict {
  bool member = true;
  Rational certificate;  // modular n_f(x); membership threshold-tested
  long depth = 0;
};

MembershipVerdict nf_member(const StepFunction& x, const StepFunction& f,
                            const std::optional<Rational>& threshold = std::nullopt);

// Minimal Q >= 1 with f**(b_n) <= Q f(b_n / Q) for all materialized n <= depth
// (Th. 4.1, condition (4.1)); Unbounded when it exceeds the threshold.
Cert breg_constant(const StepFunction& f, const IntervalPartition& b, long depth,
                   const Rational& threshold);
// Family variant: dyadic partition points required; psi exact when the family
// carries it, otherwise a certified lower bound.
Cert breg_constant(const DyadicFamily& f, long f_depth, const IntervalPartition& b, long depth,
                   const Rational& threshold);

// Th. 4.10 conditions: (1) breg on B*, (2) max cell ratio f**_{B*}/f_{B*},
// (3) modular of f**_{B*} against f.
struct BregReport {
  Cert cond1;
  Cert cond2;
  Cert cond3;
};
BregReport breg_equiv_check(const StepFunction& f, const IntervalPartition& b, long depth,
                            const Rational& threshold);

// Prop. 4.8 witness: coarser points v_0 = 1 > v_1 > ... selected from B with a
// trace E(f|V)(v_k)/f(v_k/k) >= 2^k - 1. Throws WitnessUnavailable when the
// required ratios never materialize (f is B-regular at this depth).
struct NonAvgWitness {
  std::vector<Rational> points;
  std::vector<Rational> trace;  // realized ratios for k = 1..K
};
NonAvgWitness nonavg_witness(const DyadicFamily& f, long f_depth, const IntervalPartition& b,
                             long K, long depth);

// Th. 6.4 necessity transform: q'_{m_n} = 1, q'_{m_n+1} = q_{m_n+1}+q_{m_n}-1,
// where q_k = m_{k+1} - m_k. Throws NotApplicable if the gaps look bounded.
QSequence verifying_witness_q(const std::function<long(long)>& mexp, long depth);

// Th. 6.8 transform: q'_{m_n} = q_{m_n} + q_{m_n+1}.
QSequence nonuniversal_witness_q(const std::function<long(long)>& mexp, long depth);

// Appendix Theorem A divergence demo with weights mu_k = c k^-3:
// S2(K) = K/8 exactly; S1(K) = sum sqrt(mu_k)/2 bracketed to 2^-40.
struct AbramovichResult {
  Rational s2;
  Rational s1_lo, s1_hi;
};
AbramovichResult abramovich_demo(long K, const Rational& c);

}  // namespace rearr
