#include <doctest.h>

#include "rearr/errors.hpp"
#include "rearr/random.hpp"
#include "rearr/regularity.hpp"

using namespace rearr;

TEST_CASE("weak regularity constants") {
  CHECK(weak_reg_constant(StepFunction::constant(Rational(1))).value == Rational(1));
  // a_n = 2^n/n^2: max a_{n+1}/a_n over n <= 30 is 2*30^2/31^2
  const Cert w = weak_reg_constant(DyadicFamily::pow2_over_square(), 30);
  CHECK(w.finite);
  CHECK(w.value == Rational(1800, 961));
  // support restriction: f vanishing on (1/2,1] still gets a finite constant
  const StepFunction half({Rational(1), Rational(1, 2), Rational(1, 4), Rational(0)},
                          {Rational(0), Rational(1), Rational(3)});
  CHECK(weak_reg_constant(half).finite);
  // synthesized q_n = n family crosses any threshold
  const Synthesis sn = synthesize_from_q(QSequence::affine(1, 0), 400);
  const Cert wc = weak_reg_constant(sn.g, 399, Rational::pow2(10));
  CHECK_FALSE(wc.finite);
}

TEST_CASE("regularity constants") {
  CHECK(reg_constant(StepFunction::constant(Rational(1))).value == Rational(1));
  // geometric ratio-3/2 family has the exact constant 3 (closed-form tail)
  const DyadicFamily geo = DyadicFamily::geometric(Rational(1), Rational(3, 2));
  const Cert k = reg_constant(geo, 40);
  CHECK(k.finite);
  CHECK_FALSE(k.lower_bound_only);
  CHECK(k.value == Rational(3));
  CHECK(k.value <= Rational(4));
  // 2^n/n^2: certified lower bounds cross 10 at a computable depth
  const Cert p = reg_constant(DyadicFamily::pow2_over_square(), 200, Rational(10));
  CHECK_FALSE(p.finite);
  CHECK(p.lower_bound_only);
}

TEST_CASE("modular") {
  const StepFunction f({Rational(1), Rational(1, 2), Rational(1, 4), Rational(0)},
                       {Rational(1), Rational(2), Rational(5)});
  CHECK(modular(f, f) == Rational(1));
  CHECK(modular(f, StepFunction()) == Rational(0));
  const StepFunction half_dilated = dilate(f, Rational(1, 2));
  CHECK(modular(f, half_dilated) <= Rational(2));
  CHECK_THROWS_AS(modular(StepFunction(), StepFunction::constant(Rational(1))), DomainError);
  // exactness against a bisection oracle on random instances
  Rng rng(41);
  for (int i = 0; i < 40; ++i) {
    StepFunction ff = rearrange_decreasing(random_step(rng, 5, 32, 9, false));
    if (ff.is_zero()) ff = StepFunction::constant(Rational(1));
    const StepFunction xx = random_step(rng, 5, 32, 9, false);
    const Rational m = modular(ff, xx);
    if (m.is_zero()) continue;
    const StepFunction xs = rearrange_decreasing(xx);
    auto feasible = [&](const Rational& q) {
      return step_leq(xs, scale(dilate(rearrange_decreasing(ff), q.inv()), q));
    };
    CHECK(feasible(m));
    Rational lo(1), hi = m * Rational(2) + Rational(1);
    if (!feasible(lo)) {
      for (int it = 0; it < 40; ++it) {
        const Rational mid = (lo + hi) / Rational(2);
        (feasible(mid) ? hi : lo) = mid;
      }
      CHECK((m - hi).abs() <= Rational::pow2(-20) + (hi - lo));
      CHECK(m <= hi);
    } else {
      CHECK(m == Rational(1));
    }
  }
}

TEST_CASE("psi point counts") {
  const StepFunction one = StepFunction::constant(Rational(1));
  const IntervalPartition dy = IntervalPartition::dyadic();
  for (long k = 1; k <= 10; ++k) CHECK(q_psi_count(one, dy, k, 12) == 1);
  // f = {5,2,1} normalizes to integral 1; counts by direct bucketing
  const StepFunction f({Rational(1), Rational(1, 2), Rational(1, 4), Rational(0)},
                       {Rational(1), Rational(2), Rational(5)});
  CHECK(q_psi_count(f, dy, 1, 12) == 2);
  for (long k = 2; k <= 10; ++k) CHECK(q_psi_count(f, dy, k, 12) == 1);
}

TEST_CASE("synthesis from q-sequences") {
  const Synthesis s1 = synthesize_from_q(QSequence::constant(1), 30);
  CHECK(s1.v.satisfies_gap_rule());
  for (long k = 1; k <= 30; ++k) {
    CHECK(s1.v.v[static_cast<std::size_t>(k)] == Rational::pow2(-k));
    CHECK(s1.g.value(k) == Rational(1));
  }

  const Synthesis s2 = synthesize_from_q(QSequence::constant(2), 30);
  CHECK(s2.v.satisfies_gap_rule());
  CHECK(s2.v.v[1] == Rational(3, 4));
  CHECK(s2.v.v[2] == Rational(1, 2));
  CHECK(s2.v.v[3] == Rational(3, 8));
  CHECK(s2.v.v[4] == Rational(1, 4));
  const std::vector<Rational> g6{Rational(1, 2), Rational(1), Rational(1),
                                 Rational(2),    Rational(2), Rational(4)};
  for (long k = 1; k <= 6; ++k) CHECK(s2.g.value(k) == g6[static_cast<std::size_t>(k - 1)]);
  for (std::size_t r = 0; r + 2 < s2.realized_counts.size(); ++r)
    CHECK(s2.realized_counts[r] == 2);
  // psi recovery through the family's exact psi(2^-k) = v_k
  for (long k = 1; k <= 12; ++k) CHECK(count_v_in_cell(s2.v, k) == 2);

  // telescoping integral and monotonicity hold for every synthesized family
  for (long qa : {1L, 2L, 3L}) {
    const Synthesis s = synthesize_from_q(QSequence::affine(1, qa - 1), 60);
    CHECK(s.v.satisfies_gap_rule());
    CHECK(integral(s.g.materialize(60)) == s.v.v.front() - s.v.v.back());
    CHECK(s.g.materialize(60).is_nonincreasing_on_support());
  }
}

TEST_CASE("Lemma 1.10 both directions at desk scale") {
  // bounded counts: psi(2t)/psi(t) >= 1 + 2^-(d+2) at dyadic points
  const Synthesis s2 = synthesize_from_q(QSequence::constant(2), 40);
  long d = 0;
  for (long c : s2.realized_counts) d = std::max(d, c);
  const Rational bound = Rational(1) + Rational::pow2(-d - 2);
  for (std::size_t k = 1; k + 1 < s2.v.v.size(); ++k)
    CHECK(s2.v.v[k - 1] / s2.v.v[k] >= bound);

  // unbounded counts: at the last point of segment n (q_n = n points placed
  // by U2: u = 2^-n (1 + 2^{-n+1})) the dyadic psi ratio collapses
  const Synthesis sn = synthesize_from_q(QSequence::affine(1, 0), 300);
  for (long n = 8; n <= 14; ++n) {
    const Rational u = Rational::pow2(-n) * (Rational(1) + Rational::pow2(-n + 1));
    std::size_t m = 0;
    for (std::size_t j = 1; j < sn.v.v.size(); ++j)
      if (sn.v.v[j] == u) m = j;
    REQUIRE(m > 0);
    CHECK(sn.v.v[m - 1] / sn.v.v[m] <= Rational(1) + Rational::pow2(-n + 2));
  }
}

TEST_CASE("weakly regular envelope (Th 1.6.1)") {
  const DyadicFamily one = DyadicFamily::constant(Rational(1));
  const DyadicFamily g1 = envelope_weakly_regular(one, Rational(1), 10);
  for (long m = 1; m <= 10; ++m) CHECK(g1.value(m) == Rational(1));

  // f = 1_{(0,1/2]} with c = 3: g = 1/3 on D_1, 1 below
  DyadicFamily box;
  box.value = [](long n) { return n == 1 ? Rational(0) : Rational(1); };
  const DyadicFamily g2 = envelope_weakly_regular(box, Rational(1), 10);
  CHECK(g2.value(1) == Rational(1, 3));
  CHECK(g2.value(2) == Rational(1));
  CHECK(g2.value(7) == Rational(1));

  DyadicFamily lifted;
  lifted.value = [](long n) { return n == 1 ? Rational(1) : Rational(2); };
  CHECK(envelope_weakly_regular(lifted, Rational(1), 10).value(1) == Rational(1) + Rational(1, 3));

  // general family: f* <= g, ratio bound, and the (1.3) mass bound at dyadic points
  const DyadicFamily f = DyadicFamily::geometric(Rational(1), Rational(5, 4));
  const Rational eps(1, 2);
  const Rational c = Rational(2) + eps;
  const long depth = 16;
  const DyadicFamily g = envelope_weakly_regular(f, eps, depth);
  for (long m = 1; m <= depth; ++m) CHECK(f.value(m) <= g.value(m));
  for (long m = 1; m < depth; ++m) CHECK(g.value(m + 1) <= c * g.value(m));
  const StepFunction gm = g.materialize(depth), fm = f.materialize(depth);
  const Rational factor = (c - Rational(1)) / (c - Rational(2));
  for (long m = 0; m <= depth; ++m) {
    const Rational t = Rational::pow2(-m);
    CHECK(prefix_integral(gm, t) <= factor * prefix_integral(fm, t));
  }
}

TEST_CASE("bmo gap (Th 1.15) and the log bound (Cor 1.17)") {
  CHECK(bmo_gap(StepFunction::constant(Rational(7))).gap == Rational(0));
  // g = n*h on D_n: gap exactly 2h, criterion (iii) companion exactly h
  const Rational h(1, 3);
  const BmoGap b = bmo_gap(DyadicFamily::linear(h), 40);
  CHECK(b.gap == Rational(2) * h);
  CHECK(b.companion == h);
  // Cor 1.17 telescoped at dyadic points: g(2^-m) <= g(1) + m K
  const DyadicFamily lin = DyadicFamily::linear(h);
  for (long m = 1; m <= 40; ++m)
    CHECK(lin.value(m) <= lin.value(1) + Rational(m) * b.companion);
}

TEST_CASE("Th 1.4 (iv)<->(vi) on grids") {
  const StepFunction f = DyadicFamily::geometric(Rational(1), Rational(3, 2)).materialize_extended(24);
  const Cert kc = reg_constant(f);
  REQUIRE(kc.finite);
  const PsiTable psi(f);
  // forward: psi(2t)/psi(t) >= 1 + 1/(2K)
  const Rational fwd = Rational(1) + Rational(1) / (Rational(2) * kc.value);
  for (const auto& t : f.breaks()) {
    if (t.sign() <= 0 || t > Rational(1, 2)) continue;
    if (psi(t).sign() == 0) continue;
    CHECK(psi(t * Rational(2)) / psi(t) >= fwd);
  }
  // converse: a grid psi-ratio bound pushes reg down to 1/delta on the grid
  Rational delta(-1);
  for (const auto& t : f.breaks()) {
    if (t.sign() <= 0 || t > Rational(1, 2) || psi(t).sign() == 0) continue;
    const Rational r = psi(t * Rational(2)) / psi(t) - Rational(1);
    if (delta.sign() < 0 || r < delta) delta = r;
  }
  REQUIRE(delta.sign() > 0);
  for (const auto& t : f.breaks()) {
    if (t.sign() <= 0 || t > Rational(1, 2)) continue;
    CHECK(psi(t) / t <= evaluate(f, t) / delta);  // f** <= f*/delta on the grid
  }
}

TEST_CASE("Th 1.18 power bound at dyadic points") {
  const StepFunction f = DyadicFamily::geometric(Rational(1), Rational(3, 2)).materialize_extended(30);
  const Cert kc = reg_constant(f);
  REQUIRE(kc.finite);
  // the bound holds for any K >= reg constant; take the integer ceiling so the
  // cross-power exponents stay small
  mpz_class kceil;
  mpz_cdiv_q(kceil.get_mpz_t(), kc.value.num().get_mpz_t(), kc.value.den().get_mpz_t());
  const Rational K = Rational(mpq_class(kceil));
  REQUIRE(kc.value <= K);
  const Rational C = prefix_integral(f, Rational(1));
  // delta = 1 - 1/K rational: compare f**(2^-m) <= C 2^{m delta} by cross powers
  const Rational delta = Rational(1) - Rational(1) / K;
  const long p = delta.num().get_si();
  const long q = delta.den().get_si();
  const PsiTable psi(f);
  for (long m = 1; m <= 30; ++m) {
    const Rational lhs = psi(Rational::pow2(-m)) * Rational::pow2(m);  // f**(2^-m)
    // lhs <= C * 2^{m p / q}  <=>  (lhs/C)^q <= 2^{m p}
    CHECK((lhs / C).pow(q) <= Rational::pow2(m * p));
  }
}

TEST_CASE("Cor 1.5 desk form: sampled f** profile inherits regularity") {
  const StepFunction f = DyadicFamily::geometric(Rational(1), Rational(3, 2)).materialize_extended(24);
  const Cert kc = reg_constant(f);
  REQUIRE(kc.finite);
  std::vector<Rational> grid;
  for (const auto& t : f.breaks())
    if (t.sign() > 0) grid.push_back(t);
  const StepFunction prof = double_star_fn(f, grid);
  const Cert kp = reg_constant(prof);
  CHECK(kp.finite);
  CHECK(kp.value <= kc.value * kc.value);
  // the q_n = n family pushes both constants over any threshold
  const Synthesis sn = synthesize_from_q(QSequence::affine(1, 0), 300);
  CHECK_FALSE(reg_constant(sn.g, 300, Rational::pow2(8)).finite);
  std::vector<Rational> dgrid;
  const StepFunction mat = sn.g.materialize_extended(300);
  for (const auto& t : mat.breaks())
    if (t.sign() > 0) dgrid.push_back(t);
  CHECK_FALSE(reg_constant(double_star_fn(mat, dgrid), Rational::pow2(8)).finite);
}
