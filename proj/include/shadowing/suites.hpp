#pragma once

#include <string>
#include <vector>

namespace shadowing {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Named verification bundles with fixed seeds. Suites:
//   lemma21     one-sided limit shadowing on the cat map and the golden-mean shift
//   lemma22     splicing pipeline, toral and symbolic
//   lemma24     orbit splices are two-sided limit shadowed (leaf intersections)
//   corollary25 attracting/repelling sets: proper on the circle, none on the torus
//   theoremB    exhaustive non-shadowability of the sink/source splice
//   oracle      series solver against the exhaustive grid minimizer
// Throws unknown_suite for anything else.
SuiteResult run_suite(const std::string& name);

std::vector<std::string> suite_names();

// acceptance bundles, one per criterion
std::vector<CheckResult> checks_exact_orbit_identity();   // 1
std::vector<CheckResult> checks_linear_scheduled();       // 2
std::vector<CheckResult> checks_unrestricted_amplitude(); // 3
std::vector<CheckResult> checks_oracle_equivalence();     // 4
std::vector<CheckResult> checks_orbit_splices();          // 5
std::vector<CheckResult> checks_pipeline_sft();           // 6
std::vector<CheckResult> checks_morse_smale_negative();   // 7
std::vector<CheckResult> checks_invariant_sets();         // 8
std::vector<CheckResult> checks_periodic_exactness();     // 9
std::vector<CheckResult> checks_heteroclinic_indices();   // 10

std::vector<CheckResult> checks_one_sided_limit();        // suite lemma21
std::vector<CheckResult> checks_pipeline_toral();         // suite lemma22, toral half

}  // namespace shadowing
