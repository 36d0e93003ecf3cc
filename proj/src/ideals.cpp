#include "rearr/ideals.hpp"

#include <algorithm>

#include "rearr/averaging.hpp"
#include "rearr/errors.hpp"

namespace rearr {

Rational marcinkiewicz_norm(const StepFunction& x, const StepFunction& f) {
  if (integral(abs(f)).sign() <= 0) throw DomainError("marcinkiewicz_norm: f must have positive mass");
  const StepFunction xs = rearrange_decreasing(x), fs = rearrange_decreasing(f);
  const PsiTable X(xs), F(fs);
  Rational best(0);
  for (const auto& t : merged_breakpoints(xs, fs)) {
    if (t.sign() <= 0) continue;
    best = max(best, X(t) / F(t));
  }
  return best;
}

MembershipVerdict nf_member(const StepFunction& x, const StepFunction& f,
                            const std::optional<Rational>& threshold) {
  MembershipVerdict v;
  v.certificate = modular(f, x);
  if (threshold) v.member = v.certificate <= *threshold;
  return v;
}

namespace {

// Minimal Q >= 1 with Q * f(b/Q) >= c, where f is evaluated by `eval` and its
// candidate structure is given by `level_points` (positions where f changes).
// Returns nullopt when no Q <= cap works.
std::optional<Rational> min_q_single(const std::function<Rational(const Rational&)>& eval,
                                     const std::vector<Rational>& level_points, const Rational& b,
                                     const Rational& c, const Rational& cap) {
  if (c.sign() <= 0) return Rational(1);
  std::vector<Rational> cands{Rational(1), cap};
  for (const auto& tau : level_points) {
    if (tau.sign() <= 0) continue;
    const Rational q = b / tau;  // b/Q crosses tau
    if (q >= Rational(1) && q <= cap) cands.push_back(q);
    const Rational w = eval(tau);  // value just at tau; candidate from c = Q w
    if (w.sign() > 0) {
      const Rational qv = c / w;
      if (qv >= Rational(1) && qv <= cap) cands.push_back(qv);
    }
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  for (const auto& q : cands)
    if (q * eval(b / q) >= c) return q;
  return std::nullopt;
}

}  // namespace

Cert breg_constant(const StepFunction& f, const IntervalPartition& b, long depth,
                   const Rational& threshold) {
  if (!f.is_nonincreasing()) throw PreconditionError("breg_constant: f must be non-increasing");
  const PsiTable psi(f);
  const auto pts = b.points(depth);
  auto eval = [&](const Rational& t) { return t > Rational(1) ? f.values().front() : evaluate(f, t); };
  // f is non-increasing, so f(t) for t > 1 never occurs (b/Q <= 1 when Q >= 1)
  std::vector<Rational> levels = f.breaks();
  Cert out;
  out.value = Rational(1);
  out.depth = depth;
  for (std::size_t n = 1; n < pts.size(); ++n) {
    if (pts[n].sign() <= 0) break;
    const Rational c = psi(pts[n]) / pts[n];  // f**(b_n)
    const auto q = min_q_single(eval, levels, pts[n], c, threshold);
    if (!q) {
      out.finite = false;
      out.value = threshold;
      out.depth = static_cast<long>(n);
      return out;
    }
    out.value = max(out.value, *q);
  }
  return out;
}

Cert breg_constant(const DyadicFamily& f, long f_depth, const IntervalPartition& b, long depth,
                   const Rational& threshold) {
  const auto pts = b.points(depth);
  auto eval = [&](const Rational& t) {
    if (t.sign() <= 0) throw DomainError("breg family eval: t must be positive");
    if (t > Rational(1)) return f.value(1);
    const long e = t.floor_log2();
    const long m = (t == Rational::pow2(e)) ? 1 - e : -e;
    return f.value(std::max<long>(1, m));
  };
  Cert out;
  out.value = Rational(1);
  out.depth = depth;
  out.lower_bound_only = !f.has_exact_psi();
  std::optional<StepFunction> mat;  // for psi at non-dyadic points
  // level points of the family within reach: dyadics down to b_n / threshold
  for (std::size_t n = 1; n < pts.size(); ++n) {
    if (pts[n].sign() <= 0) break;
    const long e_hi = pts[n].floor_log2();
    const long e_lo = (pts[n] / threshold).floor_log2() - 1;
    std::vector<Rational> levels;
    for (long e = e_lo; e <= e_hi + 1; ++e) levels.push_back(Rational::pow2(e));
    // f**(b_n): exact for dyadic b_n with exact psi
    Rational c;
    if (pts[n] == Rational::pow2(pts[n].floor_log2())) {
      const long m = -pts[n].floor_log2();
      c = f.psi_dyadic(m, f_depth) / pts[n];
    } else {
      if (!mat) mat = f.materialize(f_depth);
      c = prefix_integral(*mat, pts[n]) / pts[n];
    }
    const auto q = min_q_single(eval, levels, pts[n], c, threshold);
    if (!q) {
      out.finite = false;
      out.value = threshold;
      out.depth = static_cast<long>(n);
      return out;
    }
    out.value = max(out.value, *q);
  }
  return out;
}

BregReport breg_equiv_check(const StepFunction& f, const IntervalPartition& b, long depth,
                            const Rational& threshold) {
  BregReport r;
  const IntervalPartition bstar = monotone_rearrangement(b, depth);
  r.cond1 = breg_constant(f, bstar, depth + 2, threshold);
  const FloorCeil fc = floor_ceil_projections(rearrange_decreasing(f), bstar, depth + 2);
  r.cond2.value = Rational(1);
  for (const auto& p : bstar.points(depth + 2)) {
    if (p.sign() <= 0) continue;
    // evaluating at p reads the cell whose right endpoint is p
    const Rational den = evaluate(fc.floor_fn, p);
    if (den.sign() <= 0) {
      r.cond2.finite = false;
      break;
    }
    r.cond2.value = max(r.cond2.value, evaluate(fc.ceil_fn, p) / den);
    if (r.cond2.value > threshold) {
      r.cond2.finite = false;
      break;
    }
  }
  const Rational cert3 = modular(f, fc.ceil_fn);
  r.cond3.value = cert3;
  r.cond3.finite = cert3 <= threshold;
  return r;
}

NonAvgWitness nonavg_witness(const DyadicFamily& f, long f_depth, const IntervalPartition& b,
                             long K, long depth) {
  if (K < 1) throw DomainError("nonavg_witness: K must be >= 1");
  const auto pts = b.points(depth);
  auto fval = [&](const Rational& t) {
    const long e = t.floor_log2();
    const long m = (t == Rational::pow2(e)) ? 1 - e : -e;
    return f.value(std::max<long>(1, m));
  };
  auto psi = [&](const Rational& t) {
    if (t == Rational(1)) return f.psi_dyadic(0, f_depth);
    const long e = t.floor_log2();
    if (t != Rational::pow2(e)) throw DomainError("nonavg_witness: needs dyadic partition points");
    return f.psi_dyadic(-e, f_depth);
  };
  auto fstarstar = [&](const Rational& t) { return psi(t) / t; };

  auto viable = [&](const Rational& u, long j) {
    const Rational fj = fval(u / Rational(j));
    return fj.sign() > 0 && fstarstar(u) / fj >= Rational::pow2(j);
  };

  NonAvgWitness w;
  w.points.push_back(Rational(1));
  std::size_t scan = 1;
  // stage k = 0 picks v_1 (viability only); stage k >= 1 picks v_{k+1} and
  // records the realized trace at v_k
  for (long k = 0; k <= K; ++k) {
    const Rational vk = w.points.back();
    Rational fk(1), trace_target(0);
    if (k >= 1) {
      fk = fval(vk / Rational(k));
      if (fk.sign() <= 0) throw WitnessUnavailable("nonavg_witness: f vanished");
      trace_target = Rational::pow2(k) - Rational(1);
    }
    bool placed = false;
    for (std::size_t i = scan; i < pts.size(); ++i) {
      const Rational& u = pts[i];
      if (u.sign() <= 0) break;
      if (!(u * Rational(2) <= vk)) continue;
      if (k >= 1 && !(u < vk / Rational(k))) continue;
      if (k >= 1) {
        const Rational avg = (psi(vk) - psi(u)) / (vk - u);
        if (avg / fk < trace_target) continue;
        if (k < K && !viable(u, k + 1)) continue;
        w.trace.push_back(avg / fk);
      } else {
        if (!viable(u, 1)) continue;
      }
      w.points.push_back(u);
      scan = i + 1;
      placed = true;
      break;
    }
    if (!placed)
      throw WitnessUnavailable("nonavg_witness: no admissible point at stage " + std::to_string(k));
  }
  return w;
}

namespace {

void require_unbounded_gaps(const std::function<long(long)>& mexp, long depth) {
  long half_max = 0, full_max = 0;
  for (long n = 0; n < depth; ++n) {
    const long gap = mexp(n + 1) - mexp(n);
    if (gap <= 0) throw DomainError("witness transform: exponents must strictly increase");
    if (n < depth / 2) half_max = std::max(half_max, gap);
    full_max = std::max(full_max, gap);
  }
  if (full_max <= half_max)
    throw NotApplicable("witness transform: gaps look bounded at this depth");
}

// position n with mexp(n) == k, if any (mexp strictly increasing)
std::optional<long> mexp_inverse(const std::function<long(long)>& mexp, long k) {
  long lo = 0, hi = std::max<long>(4, k + 1);
  while (mexp(hi) < k) hi *= 2;
  while (lo < hi) {
    const long mid = (lo + hi) / 2;
    if (mexp(mid) < k) lo = mid + 1; else hi = mid;
  }
  return mexp(lo) == k ? std::optional<long>(lo) : std::nullopt;
}

}  // namespace

QSequence verifying_witness_q(const std::function<long(long)>& mexp, long depth) {
  require_unbounded_gaps(mexp, depth);
  QSequence q;
  q.kind = "verifying_witness";
  q.rule = [mexp](long k) {
    auto gap = [&](long j) { return mexp(j + 1) - mexp(j); };
    if (k >= 1) {
      const auto n = mexp_inverse(mexp, k);
      if (n && *n >= 1) return 1L;  // q'_{m_n} = 1
      const auto n1 = mexp_inverse(mexp, k - 1);
      if (n1 && *n1 >= 1) return gap(k) + gap(k - 1) - 1;  // q'_{m_n + 1}
    }
    return gap(k);
  };
  return q;
}

QSequence nonuniversal_witness_q(const std::function<long(long)>& mexp, long depth) {
  require_unbounded_gaps(mexp, depth);
  QSequence q;
  q.kind = "nonuniversal_witness";
  q.rule = [mexp](long k) {
    auto gap = [&](long j) { return mexp(j + 1) - mexp(j); };
    if (k >= 1) {
      const auto n = mexp_inverse(mexp, k);
      if (n && *n >= 1) return gap(k) + gap(k + 1);  // q'_{m_n} = q_{m_n} + q_{m_n+1}
    }
    return gap(k);
  };
  return q;
}

AbramovichResult abramovich_demo(long K, const Rational& c) {
  if (K < 1) throw DomainError("abramovich_demo: K must be >= 1");
  if (c.sign() <= 0) throw DomainError("abramovich_demo: c must be positive");
  // weights valid: sum_{k} c k^-3 <= 1, certified with the integral tail bound
  Rational head(0);
  for (long k = 1; k <= std::max<long>(K, 8); ++k) head += c / Rational(k * k * k);
  const long KK = std::max<long>(K, 8);
  const Rational tail_bound = c / (Rational(2) * Rational(KK * KK));
  if (head + tail_bound > Rational(1))
    throw DomainError("abramovich_demo: weights c k^-3 may exceed total mass 1");

  AbramovichResult r;
  r.s2 = Rational(K) / Rational(8);
  r.s1_lo = Rational(0);
  r.s1_hi = Rational(0);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, 80);
  for (long k = 1; k <= K; ++k) {
    const Rational mu = c / Rational(k * k * k);
    // floor(mu * 2^80), then isqrt brackets sqrt(mu) within 2^-40
    mpz_class num = mu.num() * scale, flo;
    mpz_fdiv_q(flo.get_mpz_t(), num.get_mpz_t(), mu.den().get_mpz_t());
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), flo.get_mpz_t());
    mpz_class denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 2, 40);
    mpq_class lo(root, denom), hi(root + 1, denom);
    lo.canonicalize();
    hi.canonicalize();
    r.s1_lo += Rational(lo) / Rational(2);
    r.s1_hi += Rational(hi) / Rational(2);
  }
  return r;
}

}  // namespace rearr
