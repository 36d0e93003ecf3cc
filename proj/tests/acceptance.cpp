// Acceptance harness: one line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>

#include "rearr/suites.hpp"

namespace {

int failures = 0;

void criterion(int number, const std::string& label, bool pass, double seconds) {
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << number << ": " << label << "  ("
            << seconds << " s)\n";
  if (!pass) ++failures;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

bool suite_pass(const std::string& name, std::uint64_t seed, std::string* detail = nullptr) {
  const rearr::SuiteReport r = rearr::run_suite(name, seed);
  if (detail)
    for (const auto& c : r.checks)
      if (!c.pass) *detail += c.name + " [" + c.detail + "] ";
  return r.pass;
}

}  // namespace

int main() {
  const std::uint64_t seed = 20260810;
  {
    Timer t;
    criterion(1, "golden ratio threshold (Th 2.1): random vectors and witness family",
              suite_pass("golden", seed), t.elapsed());
  }
  {
    Timer t;
    criterion(2, "4/3 constant (Th 2.2): random pairs and exact witness values",
              suite_pass("four-thirds", seed), t.elapsed());
  }
  {
    Timer t;
    criterion(3, "Lemma 0.1/0.2 inequalities exact on 2000 random functions",
              suite_pass("lemma0", seed), t.elapsed());
  }
  {
    Timer t;
    criterion(4, "averaging identities exact on finite partitions (500 instances)",
              suite_pass("perp", seed), t.elapsed());
  }
  {
    Timer t;
    criterion(5, "Lemma 1.9/1.10 synthesis: q=1, q=2 exact; q_n=n crosses 2^10",
              suite_pass("regularity", seed), t.elapsed());
  }
  {
    Timer t;
    criterion(6, "Th 4.1 / Prop 4.8 round trip: unbounded certificate and witness trace",
              suite_pass("breg", seed), t.elapsed());
  }
  {
    Timer t;
    criterion(7, "Th 6.4 / Th 6.8 witnesses with square exponents",
              suite_pass("witnesses", seed), t.elapsed());
  }
  {
    Timer t;
    criterion(8, "Ch 3 constructor: 200 instances built and verified; oracle contrapositive",
              suite_pass("rearrange", seed), t.elapsed());
  }
  {
    Timer t;
    criterion(9, "appendix divergence demo: S2 = K/8 exactly, S1 bracketed",
              suite_pass("abramovich", seed), t.elapsed());
  }
  {
    Timer t;
    const rearr::SuiteReport r1 = rearr::run_suite("all", seed);
    const rearr::SuiteReport r2 = rearr::run_suite("all", seed);
    const bool identical = rearr::report_to_json(r1) == rearr::report_to_json(r2);
    criterion(10, "determinism: 'suite all' twice is byte-identical and green",
              identical && r1.pass, t.elapsed());
  }
  if (failures) std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}
