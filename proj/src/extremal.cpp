#include "rearr/extremal.hpp"

#include <algorithm>

#include "rearr/averaging.hpp"
#include "rearr/errors.hpp"

namespace rearr {

Rational min_delta(const IntervalPartition& b, long depth) {
  if (depth < 1) throw DomainError("min_delta: depth must be >= 1");
  const auto pts = b.points(depth);
  auto star_pts = monotone_rearrangement(b, depth).points(depth + 2);
  // positive b*_m, ascending for neighbor search
  std::vector<Rational> star;
  for (const auto& p : star_pts)
    if (p.sign() > 0) star.push_back(p);
  std::sort(star.begin(), star.end());

  Rational delta(1);
  for (std::size_t n = 1; n < pts.size(); ++n) {
    const Rational& bn = pts[n];
    if (bn.sign() <= 0) break;
    auto it = std::lower_bound(star.begin(), star.end(), bn);
    Rational best(0);
    bool have = false;
    if (it != star.end()) {  // smallest b* >= b_n
      best = *it / bn;
      have = true;
    }
    if (it != star.begin()) {  // largest b* < b_n
      const Rational r = bn / *std::prev(it);
      if (!have || r < best) best = r;
    }
    delta = max(delta, best);
  }
  return delta;
}

bool leq_golden_ratio(const Rational& x) {
  if (x.sign() <= 0) return true;
  return x * x <= x + Rational(1);
}

namespace {

// Fibonacci convergent F_{k+1}/F_k with F_k >= 2^48; |alpha - F_{k+1}/F_k| < 1/F_k^2.
void golden_approximant(Rational& approx, Rational& err) {
  mpz_class a = 1, bb = 1;  // F_1, F_2
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 2, 48);
  while (bb < bound) {
    mpz_class c = a + bb;
    a = bb;
    bb = c;
  }
  mpq_class ap(bb, a);
  ap.canonicalize();
  approx = Rational(ap);
  mpq_class e(1);
  e /= mpq_class(a * a);
  err = Rational(e);
}

}  // namespace

GoldenWitness golden_witness(const Rational& eps, long depth) {
  if (eps.sign() <= 0 || eps >= Rational(1, 10))
    throw DomainError("golden_witness: eps must be in (0, 1/10)");
  if (depth < 3) throw DomainError("golden_witness: depth must be >= 3");
  GoldenWitness w;
  golden_approximant(w.alpha_approx, w.alpha_error_bound);
  // points: 1, a-1, eps, eps/2, ..., eps 2^{-depth+2}, 0 (finite)
  std::vector<Rational> pts{Rational(1), w.alpha_approx - Rational(1)};
  for (long n = 2; n <= depth; ++n) pts.push_back(eps * Rational::pow2(-n + 2));
  pts.push_back(Rational(0));
  w.partition = IntervalPartition::explicit_points(std::move(pts));
  const Rational den = Rational(2) - w.alpha_approx + eps;
  w.predicted_min_delta = (w.alpha_approx - Rational(1)) / den;
  // |d/da (a-1)/(2-a+eps)| = (1+eps)/(2-a+eps)^2; bound with a shifted by err
  const Rational den_lo = den - w.alpha_error_bound;
  w.delta_error_bound = (Rational(1) + eps) / (den_lo * den_lo) * w.alpha_error_bound;
  return w;
}

Rational psi_ratio_sup(const StepFunction& f, const IntervalPartition& b, long depth) {
  if (integral(f).sign() <= 0) throw DomainError("psi_ratio_sup: f must have positive integral");
  const auto pts = b.points(depth);
  const IntervalPartition bstar = monotone_rearrangement(b, depth);
  const StepFunction g = cond_exp(f, bstar, depth + 2);
  const PsiTable psif(f), psig(g);
  Rational best(0);
  for (const auto& t : pts) {
    if (t.sign() <= 0) break;
    const Rational den = psig(t);
    if (den.sign() == 0) continue;  // f has no mass this deep; ratio is 0/0
    best = max(best, psif(t) / den);
  }
  return best;
}

FourThirdsWitness four_thirds_witness(const Rational& eps, long depth) {
  if (eps.sign() <= 0 || eps >= Rational(1, 3))
    throw DomainError("four_thirds_witness: eps must be in (0, 1/3)");
  if (depth < 3) throw DomainError("four_thirds_witness: depth must be >= 3");
  FourThirdsWitness w;
  w.f = StepFunction({Rational(1), Rational(2, 3), Rational(0)}, {Rational(0), Rational(3, 2)});
  std::vector<Rational> pts{Rational(1), Rational(2, 3)};
  for (long n = 2; n <= depth; ++n) pts.push_back(eps * Rational::pow2(-n + 1));
  pts.push_back(Rational(0));
  w.partition = IntervalPartition::explicit_points(std::move(pts));
  w.predicted_ratio = (Rational(8) - Rational(6) * eps) / (Rational(6) - Rational(3) * eps);
  return w;
}

}  // namespace rearr
