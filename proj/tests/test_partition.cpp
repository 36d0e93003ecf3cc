#include <doctest.h>

#include "rearr/errors.hpp"
#include "rearr/partition.hpp"
#include "rearr/random.hpp"

using namespace rearr;

TEST_CASE("stochastic vector sums to one with tail") {
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const IntervalPartition b = random_partition(rng, 16, 256);
    const StochasticVector sv = stochastic_vector(b, 16);
    Rational total = sv.tail;
    for (const auto& len : sv.lengths) {
      CHECK(len.sign() > 0);
      total += len;
    }
    CHECK(total == Rational(1));
  }
  const StochasticVector sv = stochastic_vector(IntervalPartition::geometric(Rational(1, 3)), 5);
  CHECK(sv.tail == Rational(1, 243));
}

TEST_CASE("monotone rearrangement") {
  const IntervalPartition geo = IntervalPartition::geometric(Rational(1, 2));
  const auto star = monotone_rearrangement(geo, 6).points(10);
  const auto orig = geo.points(6);
  for (std::size_t i = 0; i < orig.size(); ++i) CHECK(star[i] == orig[i]);  // already monotone

  const IntervalPartition thirds =
      IntervalPartition::explicit_points({Rational(1), Rational(2, 3), Rational(1, 3), Rational(0)});
  const auto tstar = monotone_rearrangement(thirds, 3).points(5);
  CHECK(tstar == thirds.points(3));

  // multiset of lengths is preserved
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const IntervalPartition b = random_partition(rng, 12, 128);
    auto lengths = stochastic_vector(b, 12).lengths;
    auto sorted = stochastic_vector(monotone_rearrangement(b, 12), 14).lengths;
    std::sort(lengths.begin(), lengths.end());
    std::sort(sorted.begin(), sorted.end());
    CHECK(lengths == sorted);
  }

  // dominating tail forces an error: geometric p=2/3 has tail > smallest length
  CHECK_THROWS_AS(monotone_rearrangement(IntervalPartition::geometric(Rational(2, 3)), 6),
                  TailDominates);
}

TEST_CASE("dyadic projection snaps down") {
  const IntervalPartition geo = IntervalPartition::geometric(Rational(1, 2));
  const auto proj = dyadic_projection(geo, 6);
  CHECK(proj.as_dyadic_exp()->explicit_exponents == std::vector<long>{0, 1, 2, 3, 4, 5, 6});
  const IntervalPartition odd = IntervalPartition::explicit_points(
      {Rational(1), Rational(3, 5), Rational(3, 10), Rational(1, 10)});
  CHECK(dyadic_projection(odd, 3).as_dyadic_exp()->explicit_exponents ==
        std::vector<long>{0, 1, 2, 4});
  const IntervalPartition dy = IntervalPartition::explicit_points({Rational(1), Rational(1, 8)});
  CHECK(dyadic_projection(dy, 1).as_dyadic_exp()->explicit_exponents == std::vector<long>{0, 3});
}

TEST_CASE("verifying ratio") {
  CHECK(verifying_ratio(IntervalPartition::geometric(Rational(1, 2)), 12) == Rational(2));
  const IntervalPartition sq = IntervalPartition::dyadic_exp([](long n) { return n * n; }, "square");
  CHECK(verifying_ratio(sq, 10) == Rational::pow2(19));
  const IntervalPartition thirds =
      IntervalPartition::explicit_points({Rational(1), Rational(2, 3), Rational(1, 3)});
  CHECK(verifying_ratio(thirds, 2) == Rational(2));
}

TEST_CASE("finer verifying refinement") {
  // geometric 1/10: first cell splits into [9/10 / (1/10)] = 10 equal pieces
  const IntervalPartition b = IntervalPartition::geometric(Rational(1, 10));
  const IntervalPartition a = finer_verifying(b, 3);
  const auto pts = a.points(100);
  CHECK(pts[1] == Rational(1) - Rational(9, 100));
  long inside_first = 0;
  for (const auto& p : pts)
    if (p > Rational(1, 10) && p < Rational(1)) ++inside_first;
  CHECK(inside_first == 9);  // ten pieces, nine interior points
  CHECK(is_refinement(a, b, 3) == Refinement::Yes);

  // already verifying with strict beta_k < b_k: unchanged
  const IntervalPartition g34 = IntervalPartition::geometric(Rational(3, 4));
  const IntervalPartition a34 = finer_verifying(g34, 8);
  CHECK(a34.points(20) == g34.points(8));

  // dyadic n^2 exponents: ratio of the refinement stays below the exact bound
  const IntervalPartition sq = IntervalPartition::dyadic_exp([](long n) { return n * n; }, "square");
  const IntervalPartition asq = finer_verifying(sq, 4);
  const auto apts = asq.points(1 << 20);
  Rational bound(0);
  for (std::size_t i = 1; i < apts.size(); ++i) {
    if (apts[i].sign() == 0) break;
    bound = max(bound, (apts[i - 1] - apts[i]) / apts[i]);
  }
  const Rational ratio = verifying_ratio(asq, static_cast<long>(apts.size()) - 1);
  CHECK(ratio <= Rational(1) + bound);
  CHECK(ratio <= Rational(4));
}

TEST_CASE("omega and q_count") {
  const IntervalPartition geo = IntervalPartition::geometric(Rational(1, 3));
  CHECK(omega(geo, 2, 10) == Rational(1, 9));
  const IntervalPartition sq = IntervalPartition::dyadic_exp([](long n) { return n * n; }, "square");
  CHECK(omega(sq, 1, 10) == Rational(1, 2));
  for (long k = 1; k <= 10; ++k)
    CHECK(q_count(IntervalPartition::geometric(Rational(1, 2)), k, 12) == 1);
  for (long k = 1; k <= 17; ++k) {
    long expect = 0;
    for (long n = 1; n * n <= 17; ++n)
      if (n * n == k) expect = 1;
    CHECK(q_count(sq, k, 5) == expect);
  }
  // the truncated last cluster misses its neighbor's boundary point
  const IntervalPartition cl = IntervalPartition::clustered(12);
  for (long k = 1; k <= 11; ++k) CHECK(q_count(cl, k, 1 << 10) == k);
  CHECK(q_count(cl, 12, 1 << 10) == 11);
}

TEST_CASE("Th 5.13 desk consistency") {
  // bounded point counts <=> some omega(m) < 1
  const IntervalPartition geo = IntervalPartition::geometric(Rational(1, 2));
  const IntervalPartition sq = IntervalPartition::dyadic_exp([](long n) { return n * n; }, "square");
  bool geo_omega = false, sq_omega = false;
  for (long m = 1; m <= 4; ++m) {
    if (omega(geo, m, 16) < Rational(1)) geo_omega = true;
    if (omega(sq, m, 16) < Rational(1)) sq_omega = true;
  }
  CHECK(geo_omega);
  CHECK(sq_omega);
  long max_q = 0;
  for (long k = 1; k <= 30; ++k) max_q = std::max(max_q, q_count(geo, k, 30));
  for (long k = 1; k <= 30; ++k) max_q = std::max(max_q, q_count(sq, k, 5));
  CHECK(max_q <= 1);

  // clustered family: omega(m) = 1 - m/(2K) exactly (attained in the deepest
  // cluster), so it passes 1 - 2^-6 for all m <= 8 once K = 256
  const IntervalPartition cl = IntervalPartition::clustered(256);
  const long cl_pts = 256 * 257 / 2;
  for (long m = 1; m <= 8; ++m) {
    const Rational om = omega(cl, m, cl_pts);
    CHECK(om == Rational(1) - Rational(m, 512));
    CHECK(om >= Rational(1) - Rational::pow2(-6));
  }
  CHECK(q_count(IntervalPartition::clustered(65), 64, 1 << 12) == 64);
}

TEST_CASE("is_refinement") {
  CHECK(is_refinement(IntervalPartition::geometric(Rational(1, 2)),
                      IntervalPartition::geometric(Rational(1, 4)), 8) == Refinement::Yes);
  CHECK(is_refinement(IntervalPartition::geometric(Rational(1, 2)),
                      IntervalPartition::geometric(Rational(1, 3)), 8) == Refinement::No);
  // coarser-than-fine is indeterminate beyond the fine partition's range
  CHECK(is_refinement(
            IntervalPartition::explicit_points({Rational(1), Rational(1, 2), Rational(1, 4)}),
            IntervalPartition::geometric(Rational(1, 2)), 8) == Refinement::Indeterminate);
}
