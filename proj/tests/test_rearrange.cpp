#include <doctest.h>

#include "rearr/averaging.hpp"
#include "rearr/errors.hpp"
#include "rearr/random.hpp"
#include "rearr/rearrange.hpp"

using namespace rearr;

namespace {

Segment make_segment(const Rational& a, const std::vector<std::pair<Rational, Rational>>& wv) {
  Segment s;
  Rational pos = a;
  for (const auto& [w, v] : wv) {
    s.pieces.push_back({pos, pos + w, v});
    pos += w;
  }
  s.validate();
  return s;
}

}  // namespace

TEST_CASE("two_block_swap on the worked two-block instance") {
  // f = 2 on [0,1/2], 1/5 on (1/2,1]; g = 1 on both halves
  BlockInstance inst;
  inst.f = make_segment(Rational(0), {{Rational(1, 2), Rational(2)}, {Rational(1, 2), Rational(1, 5)}});
  inst.ends = {Rational(0), Rational(1, 2), Rational(1)};
  inst.alphas = {Rational(1), Rational(1)};
  const SwapResult r = two_block_swap(inst);
  CHECK(r.r0 == Rational(2, 9));
  CHECK(segments_equimeasurable(r.f, inst.f));
  CHECK(r.f.integral_on(Rational(0), Rational(1, 2)) >= Rational(1, 2));
  CHECK(r.f.integral_on(Rational(1, 2), Rational(1)) >= Rational(1, 2));

  // already dominating: identity with r0 = 0
  BlockInstance fine;
  fine.f = make_segment(Rational(0), {{Rational(1, 2), Rational(2)}, {Rational(1, 2), Rational(3, 2)}});
  fine.ends = inst.ends;
  fine.alphas = inst.alphas;
  const SwapResult rf = two_block_swap(fine);
  CHECK(rf.r0 == Rational(0));
  CHECK(segments_equimeasurable(rf.f, fine.f));

  // first-block domination failure is a precondition violation
  BlockInstance bad;
  bad.f = make_segment(Rational(0), {{Rational(1, 2), Rational(1, 5)}, {Rational(1, 2), Rational(2)}});
  bad.ends = inst.ends;
  bad.alphas = inst.alphas;
  CHECK_THROWS_AS(two_block_swap(bad), PreconditionError);
}

TEST_CASE("dominate_on_interval") {
  // single block: only the total matters
  BlockInstance single;
  single.f = make_segment(Rational(0), {{Rational(1), Rational(3, 2)}});
  single.ends = {Rational(0), Rational(1)};
  single.alphas = {Rational(1)};
  CHECK(segments_equimeasurable(dominate_on_interval(single), single.f));

  // random instances with g built from block averages of f minus slack
  Rng rng(61);
  long done = 0;
  for (int trial = 0; trial < 200 && done < 60; ++trial) {
    const long cells = 8;
    Segment f;
    {
      std::vector<std::pair<Rational, Rational>> wv;
      for (long i = 0; i < cells; ++i)
        wv.push_back({Rational(1, cells), Rational(rng.range(1, 15))});
      f = make_segment(Rational(0), wv);
    }
    // 4 equal blocks; alphas from sorted block averages, then scaled down so
    // the strict prefix domination holds at every vertex
    std::vector<Rational> ends{Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
    std::vector<Rational> alphas;
    for (int j = 0; j < 4; ++j)
      alphas.push_back(f.integral_on(ends[j], ends[j + 1]) * Rational(4));
    std::sort(alphas.begin(), alphas.end(), [](const Rational& x, const Rational& y) { return x > y; });
    {
      BlockInstance trial_inst{f, ends, alphas};
      Rational rho(1);
      for (long j = 1; j <= cells; ++j) {
        const Rational t(j, cells);
        const Rational gg = trial_inst.g_integral_on(Rational(0), t);
        if (gg.sign() > 0) rho = min(rho, f.integral_on(Rational(0), t) / gg);
      }
      for (auto& a : alphas) a *= rho * Rational(7, 8);
    }
    BlockInstance inst{f, ends, alphas};
    bool strict = true;
    for (long j = 1; j <= cells; ++j) {
      const Rational t(j, cells);
      if (!(f.integral_on(Rational(0), t) > inst.g_integral_on(Rational(0), t)))
        strict = false;
    }
    if (!strict) continue;
    ++done;
    const Segment out = dominate_on_interval(inst);
    CHECK(segments_equimeasurable(out, f));
    for (int j = 0; j < 4; ++j)
      CHECK(out.integral_on(ends[j], ends[j + 1]) >= inst.g_integral_on(ends[j], ends[j + 1]));
  }
  CHECK(done >= 60);
}

TEST_CASE("split points") {
  const StepFunction y({Rational(1), Rational(1, 2), Rational(0)}, {Rational(1), Rational(2)});
  const StepFunction x2 = scale(y, Rational(2));
  const auto rs = split_points(x2, y, 6);
  CHECK(rs.size() == 6);
  CHECK(rs[0] == Rational(1));
  for (std::size_t i = 1; i < rs.size(); ++i) CHECK(rs[i] < rs[i - 1]);

  const StepFunction xe = add(y, StepFunction::constant(Rational(1, 8)));
  CHECK(split_points(xe, y, 4).size() == 4);
  CHECK_THROWS_AS(split_points(y, y, 3), PreconditionError);
}

TEST_CASE("construct_dominating examples") {
  // x = 2 on (0,1/2], y = 1, single cell: any rearrangement works
  const StepFunction x({Rational(1), Rational(1, 2), Rational(0)}, {Rational(0), Rational(2)});
  const StepFunction one = StepFunction::constant(Rational(1));
  const IntervalPartition whole = IntervalPartition::explicit_points({Rational(1), Rational(0)});
  const StepFunction xbar = construct_dominating(x, one, whole, Rational(1, 16));
  CHECK(equimeasurable(xbar, add(rearrange_decreasing(x), StepFunction::constant(Rational(1, 16)))));
  CHECK(prefix_integral(xbar, Rational(1)) >= Rational(1));

  // y = E(x|F) exactly: succeeds thanks to the eps shift
  Rng rng(67);
  for (int i = 0; i < 40; ++i) {
    const StepFunction f = random_step(rng, 6, 8, 9, false);
    const StepFunction fs = rearrange_decreasing(f);
    const IntervalPartition cellsp = IntervalPartition::explicit_points(
        {Rational(1), Rational(1, 2), Rational(1, 4), Rational(0)});
    const StepFunction y = cond_exp(fs, cellsp, 3);
    if (!y.is_nonincreasing()) continue;
    const StepFunction out = construct_dominating(fs, y, cellsp, Rational(1, 32));
    CHECK(equimeasurable(out, add(fs, StepFunction::constant(Rational(1, 32)))));
  }
}

TEST_CASE("permutation oracle") {
  // trivial feasible
  OracleVerdict v = permutation_oracle({Rational(2), Rational(2)}, {Rational(1)}, {0, 0});
  CHECK(v.perm_feasible);
  CHECK(v.mass_feasible);
  // mass obstruction
  v = permutation_oracle({Rational(1), Rational(0)}, {Rational(1)}, {0, 0});
  CHECK_FALSE(v.mass_feasible);
  CHECK_FALSE(v.perm_feasible);
  // the recorded 4-cell instance: permutation-infeasible but mass-feasible
  v = permutation_oracle({Rational(4), Rational(0), Rational(0), Rational(0)},
                         {Rational(1), Rational(1)}, {0, 0, 1, 1});
  CHECK_FALSE(v.perm_feasible);
  CHECK(v.mass_feasible);
  CHECK_THROWS_AS(permutation_oracle(std::vector<Rational>(9, Rational(1)), {Rational(1)},
                                     std::vector<long>(9, 0)),
                  OracleLimit);
}
