#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include "shadowing/pseudo_orbit.hpp"
#include "shadowing/sft.hpp"
#include "shadowing/systems.hpp"

namespace shadowing {

// Batch experiment description shared by the CLI flags and the flat
// key = value config file. Unknown keys are rejected (fail-closed) and the
// canonical serialization round-trips unchanged.
struct ExperimentConfig {
  std::string system = "cat";   // cat | toral:a,b,c,d | sft:PATH | northsouth:A
  std::string method = "direct";     // direct solver or the splicing pipeline
  std::string schedule = "const:0";  // kind:amplitude
  std::string splice;           // "past,future"; anchors are system-specific
  long long window = 100;
  std::uint64_t seed = 1;
  double eps = 0.05;
  long long tail_terms = 0;     // 0 = solver default
  double grid_step = 1e-3;
  std::string out;              // deviation CSV path
  std::string cert;             // certificate JSON path
  std::string expect;           // "", two_sided_limit_shadowed, ..., unshadowable, shadowable

  void set(const std::string& key, const std::string& value);  // throws parse_error on unknown key
  std::string serialized() const;

  static ExperimentConfig from_stream(std::istream& in);
  static ExperimentConfig from_file(const std::string& path);

  bool operator==(const ExperimentConfig&) const = default;
};

using SystemVariant = std::variant<HyperbolicToralMap, Sft, NorthSouthCircleMap>;

// "cat", "toral:2,1,1,1", "sft:matrix.txt", "northsouth:0.1"
SystemVariant parse_system(const std::string& descriptor);

// "inv_linear:0.3" etc.
ErrorSchedule parse_schedule(const std::string& descriptor);

// splice anchor: circle accepts "sink" / "source" / number; torus accepts
// "x:y"; SFT accepts "per:SYMBOLS" (periodic word)
TorusPoint parse_torus_anchor(const std::string& token);
CirclePoint parse_circle_anchor(const NorthSouthCircleMap& map, const std::string& token);
SymbolicPoint parse_sft_anchor(const Sft& sft, const std::string& token);

}  // namespace shadowing
