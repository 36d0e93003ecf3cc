#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "rearr/averaging.hpp"
#include "rearr/errors.hpp"
#include "rearr/extremal.hpp"
#include "rearr/ideals.hpp"
#include "rearr/json_io.hpp"
#include "rearr/rearrange.hpp"
#include "rearr/regularity.hpp"
#include "rearr/suites.hpp"

namespace {

using rearr::json;

json load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rearr::DomainError("cannot open input file '" + path + "'");
  json j;
  in >> j;
  return j;
}

void emit(const json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    // flat CSV: key,value per line for scalar outputs
    for (auto it = j.begin(); it != j.end(); ++it)
      std::cout << it.key() << "," << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
  }
}

json cert_json(const rearr::Cert& c, int precision) {
  json j{{"finite", c.finite}, {"value", c.value.str()}, {"decimal", c.value.decimal(precision)}};
  if (c.lower_bound_only) j["lower_bound_only"] = true;
  if (!c.finite) j["crossed_at"] = c.depth;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact rearrangement, averaging, and regularity calculator on (0,1]"};
  app.require_subcommand(1);

  std::string input, format = "json";
  long depth = 32;
  std::uint64_t seed = 1;
  long trials = 100;
  int precision = 12;
  app.add_option("--input", input, "JSON input file")->envname("REARR_INPUT");
  app.add_option("--depth", depth, "materialization depth")->envname("REARR_DEPTH");
  app.add_option("--seed", seed, "random seed")->envname("REARR_SEED");
  app.add_option("--trials", trials, "number of trials")->envname("REARR_TRIALS");
  app.add_option("--format", format, "csv|json")->envname("REARR_FORMAT");
  app.add_option("--precision", precision, "decimal digits")->envname("REARR_PRECISION");

  auto* c_rearrange = app.add_subcommand("rearrange", "non-increasing rearrangement of a step function");
  auto* c_avg = app.add_subcommand("avg", "conditional expectation over an interval partition");
  auto* c_avg_perp = app.add_subcommand("avg-perp", "independent-complement average (profile and pullback)");
  auto* c_regularity = app.add_subcommand("regularity", "weak/strong regularity constants");
  auto* c_breg = app.add_subcommand("breg", "B-regularity certificate (4.1)");
  auto* c_member = app.add_subcommand("member", "principal-ideal membership via the modular");
  auto* c_verify = app.add_subcommand("verify-partition", "verifying-partition ratio sup b_{n-1}/b_n");
  auto* c_finer = app.add_subcommand("finer-verifying", "finer verifying refinement");
  auto* c_golden = app.add_subcommand("golden", "golden-ratio matching threshold sweep");
  auto* c_psi = app.add_subcommand("psi-ratio", "4/3 functional sweep");
  auto* c_synth = app.add_subcommand("synthesize-q", "synthesize g from a q-sequence");
  auto* c_witness = app.add_subcommand("witness", "verifying/nonuniversal witness q-transforms");
  auto* c_dominate = app.add_subcommand("dominate", "rearrange x to dominate y on cells");
  auto* c_abra = app.add_subcommand("demo-abramovich", "appendix divergence demo");
  auto* c_suite = app.add_subcommand("suite", "run a named verification suite");
  auto* c_sweep = app.add_subcommand("sweep", "CSV metric sweep");

  std::string suite_name = "all";
  c_suite->add_option("name", suite_name, "suite name or 'all'");
  std::string sweep_family = "min-delta-random";
  c_sweep->add_option("family", sweep_family, "metric family");
  long abra_k = 8;
  std::string abra_c = "1/2";
  c_abra->add_option("--k", abra_k, "number of atoms");
  c_abra->add_option("--c", abra_c, "weight scale");
  std::string witness_kind = "verifying";
  c_witness->add_option("--kind", witness_kind, "verifying|nonuniversal");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_rearrange->parsed()) {
      const json j = load_input(input);
      emit(rearr::to_json(rearr::rearrange_decreasing(rearr::step_from_json(j.at("f")))), format);
    } else if (c_avg->parsed()) {
      const json j = load_input(input);
      const auto f = rearr::step_from_json(j.at("f"));
      const auto b = rearr::partition_from_json(j.at("partition"));
      const auto r = rearr::cond_exp_full(f, b, depth);
      json out{{"avg", rearr::to_json(r.fn)}, {"tail_was_averaged", r.tail_was_averaged}};
      emit(out, format);
    } else if (c_avg_perp->parsed()) {
      const json j = load_input(input);
      const auto f = rearr::step_from_json(j.at("f"));
      const auto b = rearr::partition_from_json(j.at("partition"));
      std::optional<rearr::Rational> tol;
      if (j.contains("tol")) tol = rearr::Rational::parse(j.at("tol"));
      json out{{"profile", rearr::to_json(rearr::perp_avg_profile(f, b, depth, tol))},
               {"pullback", rearr::to_json(rearr::perp_avg_pullback(f, b, depth, tol))}};
      emit(out, format);
    } else if (c_regularity->parsed()) {
      const json j = load_input(input);
      json out;
      const rearr::Rational threshold = rearr::Rational::pow2(20);
      if (j.contains("family")) {
        const auto spec = rearr::family_from_json(j.at("family"));
        const long d = std::min(depth, spec.depth);
        out["weak"] = cert_json(rearr::weak_reg_constant(spec.family, d, threshold), precision);
        out["reg"] = cert_json(rearr::reg_constant(spec.family, d, threshold), precision);
        const auto bmo = rearr::bmo_gap(spec.family, d);
        out["bmo_gap"] = bmo.gap.str();
        out["bmo_companion"] = bmo.companion.str();
      } else {
        const auto f = rearr::step_from_json(j.at("f"));
        out["weak"] = cert_json(rearr::weak_reg_constant(f, threshold), precision);
        out["reg"] = cert_json(rearr::reg_constant(f, threshold), precision);
        const auto bmo = rearr::bmo_gap(f);
        out["bmo_gap"] = bmo.gap.str();
        out["bmo_companion"] = bmo.companion.str();
      }
      emit(out, format);
    } else if (c_breg->parsed()) {
      const json j = load_input(input);
      const auto b = rearr::partition_from_json(j.at("partition"));
      const rearr::Rational threshold =
          j.contains("threshold") ? rearr::Rational::parse(j.at("threshold")) : rearr::Rational::pow2(10);
      rearr::Cert c;
      if (j.contains("family")) {
        const auto spec = rearr::family_from_json(j.at("family"));
        c = rearr::breg_constant(spec.family, spec.depth, b, depth, threshold);
      } else {
        c = rearr::breg_constant(rearr::step_from_json(j.at("f")), b, depth, threshold);
      }
      emit(cert_json(c, precision), format);
    } else if (c_member->parsed()) {
      const json j = load_input(input);
      const auto x = rearr::step_from_json(j.at("x"));
      const auto f = rearr::step_from_json(j.at("f"));
      std::optional<rearr::Rational> threshold;
      if (j.contains("threshold")) threshold = rearr::Rational::parse(j.at("threshold"));
      const auto v = rearr::nf_member(x, f, threshold);
      emit(json{{"member", v.member},
                {"certificate", v.certificate.str()},
                {"decimal", v.certificate.decimal(precision)}},
           format);
    } else if (c_verify->parsed()) {
      const json j = load_input(input);
      const auto b = rearr::partition_from_json(j.at("partition"));
      emit(json{{"verifying_ratio", rearr::verifying_ratio(b, depth).str()}}, format);
    } else if (c_finer->parsed()) {
      const json j = load_input(input);
      const auto b = rearr::partition_from_json(j.at("partition"));
      const auto a = rearr::finer_verifying(b, depth);
      json out = rearr::to_json(a, depth);
      out["verifying_ratio"] = rearr::verifying_ratio(a, depth * 4).str();
      emit(out, format);
    } else if (c_golden->parsed()) {
      rearr::SweepConfig cfg{seed, trials, std::min<long>(depth, 64), "min-delta-random"};
      std::cout << rearr::sweep_to_csv(rearr::run_sweep(cfg), precision);
    } else if (c_psi->parsed()) {
      rearr::SweepConfig cfg{seed, trials, std::min<long>(depth, 64), "psi-ratio-random"};
      std::cout << rearr::sweep_to_csv(rearr::run_sweep(cfg), precision);
    } else if (c_synth->parsed()) {
      const json j = load_input(input);
      const auto q = rearr::qsequence_from_json(j.at("q"));
      const auto s = rearr::synthesize_from_q(q, depth);
      json vs = json::array(), gs = json::array(), counts = json::array();
      for (const auto& v : s.v.v) vs.push_back(v.str());
      for (long k = 1; k <= s.depth; ++k) gs.push_back(s.g.value(k).str());
      for (long cnt : s.realized_counts) counts.push_back(cnt);
      emit(json{{"v", vs},
                {"g_values", gs},
                {"realized_counts", counts},
                {"junction_repaired", s.junction_repaired}},
           format);
    } else if (c_witness->parsed()) {
      const json j = load_input(input);
      auto mexp_j = j.at("exponents").get<std::vector<long>>();
      auto mexp = [mexp_j](long n) {
        if (n < 0) throw rearr::DomainError("negative index");
        if (static_cast<std::size_t>(n) < mexp_j.size()) return mexp_j[static_cast<std::size_t>(n)];
        const long gap = mexp_j.size() > 1 ? mexp_j.back() - mexp_j[mexp_j.size() - 2] : 1;
        return mexp_j.back() + gap * (n - static_cast<long>(mexp_j.size()) + 1);
      };
      const auto q = witness_kind == "nonuniversal" ? rearr::nonuniversal_witness_q(mexp, depth)
                                                    : rearr::verifying_witness_q(mexp, depth);
      json qs = json::array();
      for (long k = 1; k <= depth; ++k) qs.push_back(q(k));
      emit(json{{"kind", q.kind}, {"q_prime", qs}}, format);
    } else if (c_dominate->parsed()) {
      const json j = load_input(input);
      const auto x = rearr::step_from_json(j.at("x"));
      const auto y = rearr::step_from_json(j.at("y"));
      const auto cells = rearr::partition_from_json(j.at("cells"));
      const rearr::Rational eps =
          j.contains("eps") ? rearr::Rational::parse(j.at("eps")) : rearr::Rational(1, 64);
      const auto xbar = rearr::construct_dominating(x, y, cells, eps);
      emit(json{{"xbar", rearr::to_json(xbar)}}, format);
    } else if (c_abra->parsed()) {
      const auto r = rearr::abramovich_demo(abra_k, rearr::Rational::parse(abra_c));
      emit(json{{"s2", r.s2.str()},
                {"s1_lo", r.s1_lo.decimal(precision)},
                {"s1_hi", r.s1_hi.decimal(precision)}},
           format);
    } else if (c_suite->parsed()) {
      const auto rep = rearr::run_suite(suite_name, seed);
      std::cout << rearr::report_to_json(rep, precision) << "\n";
      return rep.pass ? 0 : 1;
    } else if (c_sweep->parsed()) {
      rearr::SweepConfig cfg{seed, trials, depth, sweep_family};
      std::cout << rearr::sweep_to_csv(rearr::run_sweep(cfg), precision);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
