#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rearr/rational.hpp"

namespace rearr {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // certificates as exact rationals
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  bool pass = false;
  std::vector<CheckResult> checks;
};

// name in {lemma0, golden, four-thirds, regularity, breg, perp, rearrange,
// witnesses, abramovich, all}; throws DomainError on unknown names.
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

std::vector<std::string> suite_names();

// Deterministic JSON rendering of a report (schema "1").
std::string report_to_json(const SuiteReport& r, int precision = 12);

struct SweepConfig {
  std::uint64_t seed = 1;
  long trials = 100;
  long depth = 32;
  std::string family;  // min-delta-random | psi-ratio-random | golden-witness | four-thirds-witness
};

struct SweepRow {
  std::uint64_t seed;
  long trial;
  long depth;
  Rational value;
  bool pass;
};

std::vector<SweepRow> run_sweep(const SweepConfig& cfg);
std::string sweep_to_csv(const std::vector<SweepRow>& rows, int precision = 12);

}  // namespace rearr
