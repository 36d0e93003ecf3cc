#include <doctest.h>

#include "rearr/json_io.hpp"
#include "rearr/random.hpp"
#include "rearr/suites.hpp"

using namespace rearr;

TEST_CASE("step function json round trip") {
  Rng rng(83);
  for (int i = 0; i < 50; ++i) {
    const StepFunction f = random_step(rng, 8, 64, 15, false);
    CHECK(step_from_json(to_json(f)) == f);
  }
  const json j = json::parse(R"({"breakpoints":["1","1/2","0"],"values":["5","2"]})");
  const StepFunction f = step_from_json(j);
  CHECK(evaluate(f, Rational(1, 4)) == Rational(2));
  CHECK(evaluate(f, Rational(3, 4)) == Rational(5));
}

TEST_CASE("partition json") {
  const json geo = json::parse(R"({"kind":"geometric","p":"1/2"})");
  CHECK(partition_from_json(geo).points(3) ==
        std::vector<Rational>{Rational(1), Rational(1, 2), Rational(1, 4), Rational(1, 8)});
  const json dyx = json::parse(R"({"kind":"dyadic_exp","exponents":[0,1,4,9]})");
  CHECK(partition_from_json(dyx).points(3).back() == Rational::pow2(-9));
  const json sq = json::parse(R"({"kind":"dyadic_exp","rule":"square"})");
  CHECK(partition_from_json(sq).points(3).back() == Rational::pow2(-9));
  const json ex = json::parse(R"({"kind":"explicit","points":["1","2/3","0"]})");
  const IntervalPartition p = partition_from_json(ex);
  CHECK(partition_from_json(to_json(p)).points(2) == p.points(2));
}

TEST_CASE("family and q-sequence json") {
  const json fam = json::parse(R"({"rule":{"kind":"geometric","first":"1","ratio":"3/2"},"depth":12})");
  const FamilySpec spec = family_from_json(fam);
  CHECK(spec.depth == 12);
  CHECK(spec.family.value(3) == Rational(9, 4));
  const json q = json::parse(R"({"kind":"affine","a":1,"b":0})");
  CHECK(qsequence_from_json(q)(5) == 5);
  const json tq = json::parse(
      R"({"kind":"transform","name":"verifying_witness","exponents":[0,1,4,9,16,25,36,49,64,81,100],"depth":8})");
  const QSequence qv = qsequence_from_json(tq);
  CHECK(qv(1) == 1);
  CHECK(qv(2) == 7);
}

TEST_CASE("joint realization json") {
  JointRealization jr;
  jr.weights = {Rational(1, 3), Rational(2, 3)};
  jr.functions = {StepFunction::constant(Rational(2)), StepFunction::constant(Rational(1))};
  const JointRealization back = joint_from_json(to_json(jr));
  CHECK(back.weights == jr.weights);
  CHECK(back.functions == jr.functions);
}

TEST_CASE("suite report rendering is deterministic") {
  const SuiteReport a = run_suite("abramovich", 5);
  const SuiteReport b = run_suite("abramovich", 5);
  CHECK(report_to_json(a) == report_to_json(b));
  CHECK(a.pass);
}

TEST_CASE("sweep csv shape and determinism") {
  SweepConfig cfg;
  cfg.seed = 9;
  cfg.trials = 5;
  cfg.depth = 24;
  cfg.family = "golden-witness";
  const auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].value > rows[i - 1].value);
  for (const auto& r : rows) CHECK(r.pass);
  CHECK(sweep_to_csv(run_sweep(cfg)) == sweep_to_csv(rows));
  cfg.family = "four-thirds-witness";
  for (const auto& r : run_sweep(cfg)) CHECK(r.pass);
}
