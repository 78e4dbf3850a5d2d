// Acceptance runner: one pass/fail line per criterion, exit 0 iff all pass.

#include <cstdio>
#include <vector>

#include "shadowing/suites.hpp"

int main() {
  using shadowing::CheckResult;
  struct Criterion {
    const char* name;
    std::vector<CheckResult> (*run)();
  };
  const Criterion criteria[] = {
      {"1. exact-orbit identity on all three systems", shadowing::checks_exact_orbit_identity},
      {"2. scheduled cat-map shadows: residuals, edges, envelopes",
       shadowing::checks_linear_scheduled},
      {"3. unrestricted mid-window error amplitudes", shadowing::checks_unrestricted_amplitude},
      {"4. series solver vs exhaustive grid oracle", shadowing::checks_oracle_equivalence},
      {"5. orbit splices two-sided limit shadowed", shadowing::checks_orbit_splices},
      {"6. splicing pipeline on the golden-mean shift", shadowing::checks_pipeline_sft},
      {"7. Morse-Smale splice certified unshadowable", shadowing::checks_morse_smale_negative},
      {"8. proper attracting set on the circle, none on the torus",
       shadowing::checks_invariant_sets},
      {"9. periodic-point counts match the exact formulas", shadowing::checks_periodic_exactness},
      {"10. heteroclinic relations and indices", shadowing::checks_heteroclinic_indices},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    bool pass = true;
    std::string detail;
    try {
      for (const CheckResult& r : c.run()) {
        if (!r.pass) {
          pass = false;
          detail += (detail.empty() ? "" : "; ") + r.name;
          if (!r.detail.empty()) detail += " [" + r.detail + "]";
        }
      }
    } catch (const std::exception& e) {
      pass = false;
      detail = e.what();
    }
    std::printf("[%s] criterion %s%s%s\n", pass ? "PASS" : "FAIL", c.name,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  if (failures == 0)
    std::printf("acceptance: all 10 criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
