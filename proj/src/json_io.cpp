#include "rearr/json_io.hpp"

#include "rearr/errors.hpp"
#include "rearr/ideals.hpp"

namespace rearr {

namespace {

std::vector<Rational> rationals_from(const json& arr) {
  std::vector<Rational> out;
  for (const auto& s : arr) out.push_back(Rational::parse(s.get<std::string>()));
  return out;
}

json rationals_to(const std::vector<Rational>& v) {
  json arr = json::array();
  for (const auto& r : v) arr.push_back(r.str());
  return arr;
}

std::function<long(long)> exponent_rule(const std::string& name) {
  if (name == "square") return [](long n) { return n * n; };
  if (name == "linear") return [](long n) { return n; };
  throw DomainError("unknown exponent rule '" + name + "'");
}

}  // namespace

json to_json(const StepFunction& f) {
  return json{{"breakpoints", rationals_to(f.breaks())}, {"values", rationals_to(f.values())}};
}

StepFunction step_from_json(const json& j) {
  return StepFunction(rationals_from(j.at("breakpoints")), rationals_from(j.at("values")));
}

json to_json(const IntervalPartition& b, long depth_hint) {
  if (const auto* g = b.as_geometric()) return json{{"kind", "geometric"}, {"p", g->p.str()}};
  if (const auto* d = b.as_dyadic_exp()) {
    if (!d->explicit_exponents.empty())
      return json{{"kind", "dyadic_exp"}, {"exponents", d->explicit_exponents}};
    return json{{"kind", "dyadic_exp"}, {"rule", d->rule_name}};
  }
  (void)depth_hint;
  return json{{"kind", "explicit"}, {"points", rationals_to(b.as_explicit()->points)}};
}

IntervalPartition partition_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "geometric") return IntervalPartition::geometric(Rational::parse(j.at("p")));
  if (kind == "explicit") return IntervalPartition::explicit_points(rationals_from(j.at("points")));
  if (kind == "clustered") return IntervalPartition::clustered(j.at("clusters").get<long>());
  if (kind == "dyadic_exp") {
    if (j.contains("exponents"))
      return IntervalPartition::dyadic_exp_list(j.at("exponents").get<std::vector<long>>());
    const std::string rule = j.at("rule").get<std::string>();
    return IntervalPartition::dyadic_exp(exponent_rule(rule), rule);
  }
  throw DomainError("unknown partition kind '" + kind + "'");
}

FamilySpec family_from_json(const json& j) {
  FamilySpec out;
  out.depth = j.value("depth", 32L);
  const json& r = j.at("rule");
  const std::string kind = r.at("kind").get<std::string>();
  if (kind == "const") {
    out.family = DyadicFamily::constant(Rational::parse(r.at("value")));
  } else if (kind == "geometric") {
    out.family = DyadicFamily::geometric(Rational::parse(r.at("first")), Rational::parse(r.at("ratio")));
  } else if (kind == "pow2_over_square") {
    out.family = DyadicFamily::pow2_over_square();
  } else if (kind == "linear") {
    out.family = DyadicFamily::linear(Rational::parse(r.at("h")));
  } else if (kind == "explicit") {
    out.family = DyadicFamily::explicit_values(rationals_from(r.at("values")));
  } else {
    throw DomainError("unknown family rule '" + kind + "'");
  }
  return out;
}

QSequence qsequence_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "const") return QSequence::constant(j.at("c").get<long>());
  if (kind == "affine") return QSequence::affine(j.at("a").get<long>(), j.at("b").get<long>());
  if (kind == "square") return QSequence::square();
  if (kind == "explicit") return QSequence::explicit_values(j.at("values").get<std::vector<long>>());
  if (kind == "transform") {
    const std::string name = j.at("name").get<std::string>();
    std::function<long(long)> mexp;
    if (j.contains("exponents")) {
      const auto ex = j.at("exponents").get<std::vector<long>>();
      mexp = [ex](long n) {
        if (n < 0) throw DomainError("exponent index negative");
        if (static_cast<std::size_t>(n) < ex.size()) return ex[static_cast<std::size_t>(n)];
        // extend affinely with the last gap so lookups stay total
        const long last = ex.back();
        const long gap = ex.size() > 1 ? ex.back() - ex[ex.size() - 2] : 1;
        return last + gap * (n - static_cast<long>(ex.size()) + 1);
      };
    } else {
      mexp = exponent_rule(j.at("exponent_rule").get<std::string>());
    }
    const long depth = j.value("depth", 20L);
    if (name == "verifying_witness") return verifying_witness_q(mexp, depth);
    if (name == "nonavg_witness" || name == "nonuniversal_witness")
      return nonuniversal_witness_q(mexp, depth);
    throw DomainError("unknown q transform '" + name + "'");
  }
  throw DomainError("unknown q-sequence kind '" + kind + "'");
}

json to_json(const JointRealization& jr) {
  json fns = json::array();
  for (const auto& f : jr.functions) fns.push_back(to_json(f));
  return json{{"weights", rationals_to(jr.weights)}, {"functions", fns}};
}

JointRealization joint_from_json(const json& j) {
  JointRealization jr;
  jr.weights = rationals_from(j.at("weights"));
  for (const auto& f : j.at("functions")) jr.functions.push_back(step_from_json(f));
  return jr;
}

}  // namespace rearr
