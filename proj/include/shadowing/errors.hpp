#pragma once

#include <stdexcept>
#include <string>

namespace shadowing {

// Failure vocabulary shared by the whole library. Construction and solver
// entry points validate their inputs and throw Error; verdict downgrades
// (e.g. a non-decaying input to a limit solver) are reported in results
// instead of thrown.
enum class errc {
  not_unimodular,
  not_hyperbolic,
  unsupported_dimension,
  dimension_mismatch,
  dead_symbol,
  not_mixing,
  bad_parameter,
  bad_window,
  repair_overlap,
  spacing_too_small,
  no_lattice_offset,
  search_exhausted,
  truncation_insufficient,
  grid_too_coarse,
  bound_too_large,
  unknown_suite,
  parse_error,
  io_error,
  pipeline_failure,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool ok, errc code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

}  // namespace shadowing
