#ifndef CLIPPPO_SCHEDULES_HPP_
#define CLIPPPO_SCHEDULES_HPP_

#include <string>
#include <string_view>

namespace clipppo::schedules {

enum class ScheduleKind { constant, linear, exponential };

// Clipping-range schedule: maps training progress to the clip half-width.
//   constant:    eps_t = eps0
//   linear:      eps_t = (total - t) / total * eps0
//   exponential: eps_t = alpha^(100 * t / total) * eps0
struct ClipSchedule {
  ScheduleKind kind = ScheduleKind::constant;
  double eps0 = 0.2;
  double alpha = 0.99;  // exponential only
};

// Pure evaluation. `t` is the number of environment timesteps consumed
// before the current optimization phase; `total` is the training budget.
// The exponent uses exact real arithmetic (no integer staircase).
// Requires total > 0 and 0 <= t <= total; the result is clamped below at 0.
double epsilon_at(const ClipSchedule& schedule, double t, double total);

// Config string forms: "constant", "linear", "exp".
ScheduleKind parse_schedule_kind(std::string_view s);
std::string to_string(ScheduleKind kind);

// eps0 must be positive; alpha must lie in (0, 1).
void validate(const ClipSchedule& schedule);

}  // namespace clipppo::schedules

#endif  // CLIPPPO_SCHEDULES_HPP_
