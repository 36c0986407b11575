#include "clipppo/schedules.hpp"

#include <algorithm>
#include <cmath>

#include "clipppo/errors.hpp"

namespace clipppo::schedules {

double epsilon_at(const ClipSchedule& schedule, double t, double total) {
  if (total <= 0.0) throw UsageError("epsilon_at: total timesteps must be positive");
  if (t < 0.0 || t > total) throw UsageError("epsilon_at: t must lie in [0, total]");
  double eps = schedule.eps0;
  switch (schedule.kind) {
    case ScheduleKind::constant:
      break;
    case ScheduleKind::linear:
      eps = (total - t) / total * schedule.eps0;
      break;
    case ScheduleKind::exponential:
      eps = std::pow(schedule.alpha, 100.0 * t / total) * schedule.eps0;
      break;
  }
  return std::max(eps, 0.0);
}

ScheduleKind parse_schedule_kind(std::string_view s) {
  if (s == "constant") return ScheduleKind::constant;
  if (s == "linear") return ScheduleKind::linear;
  if (s == "exp") return ScheduleKind::exponential;
  throw UsageError("unknown clip schedule '" + std::string(s) + "' (expected constant|linear|exp)");
}

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::constant: return "constant";
    case ScheduleKind::linear: return "linear";
    case ScheduleKind::exponential: return "exp";
  }
  return "constant";
}

void validate(const ClipSchedule& schedule) {
  if (!(schedule.eps0 > 0.0)) throw UsageError("clip schedule: eps0 must be > 0");
  if (schedule.kind == ScheduleKind::exponential && !(schedule.alpha > 0.0 && schedule.alpha < 1.0))
    throw UsageError("clip schedule: alpha must lie in (0, 1)");
}

}  // namespace clipppo::schedules
