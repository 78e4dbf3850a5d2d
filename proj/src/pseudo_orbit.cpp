#include "shadowing/pseudo_orbit.hpp"

namespace shadowing {

const char* schedule_kind_name(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::constant: return "const";
    case ScheduleKind::inverse_linear: return "inv_linear";
    case ScheduleKind::inverse_square: return "inv_square";
    case ScheduleKind::forward_decay: return "inv_linear_fwd";
    case ScheduleKind::backward_decay: return "inv_linear_bwd";
  }
  return "const";
}

ScheduleKind schedule_kind_from_name(const std::string& name) {
  if (name == "const") return ScheduleKind::constant;
  if (name == "inv_linear") return ScheduleKind::inverse_linear;
  if (name == "inv_square") return ScheduleKind::inverse_square;
  if (name == "inv_linear_fwd") return ScheduleKind::forward_decay;
  if (name == "inv_linear_bwd") return ScheduleKind::backward_decay;
  fail(errc::parse_error, "unknown schedule kind '" + name + "'");
}

}  // namespace shadowing
