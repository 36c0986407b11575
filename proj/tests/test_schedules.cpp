#include <doctest.h>

#include <cmath>

#include "clipppo/errors.hpp"
#include "clipppo/schedules.hpp"

using namespace clipppo::schedules;

namespace {

// Scalar exponentiation by repeated multiplication, independent of the
// std::pow path used by the implementation.
double pow_oracle(double base, int exponent) {
  double out = 1.0;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

ClipSchedule make(ScheduleKind kind, double eps0 = 0.2, double alpha = 0.99) {
  ClipSchedule s;
  s.kind = kind;
  s.eps0 = eps0;
  s.alpha = alpha;
  return s;
}

}  // namespace

TEST_CASE("every kind starts at eps0") {
  for (auto kind : {ScheduleKind::constant, ScheduleKind::linear, ScheduleKind::exponential})
    CHECK(epsilon_at(make(kind), 0.0, 1000.0) == 0.2);
}

TEST_CASE("linear decay hits zero at the end and half at the midpoint") {
  const auto s = make(ScheduleKind::linear);
  CHECK(epsilon_at(s, 1000.0, 1000.0) == 0.0);
  CHECK(epsilon_at(s, 500.0, 1000.0) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("exponential endpoint matches the 0.99^100 factor") {
  const auto s = make(ScheduleKind::exponential);
  const double expected = pow_oracle(0.99, 100) * 0.2;
  CHECK(epsilon_at(s, 1000.0, 1000.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(epsilon_at(s, 1000.0, 1000.0) == doctest::Approx(0.07320646825464584).epsilon(1e-12));
}

TEST_CASE("matches the closed forms on a grid of progress fractions") {
  const double total = 123456.0;
  for (double frac : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double t = frac * total;
    CHECK(epsilon_at(make(ScheduleKind::constant), t, total) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(epsilon_at(make(ScheduleKind::linear), t, total) ==
          doctest::Approx((total - t) / total * 0.2).epsilon(1e-12));
    CHECK(epsilon_at(make(ScheduleKind::exponential), t, total) ==
          doctest::Approx(std::pow(0.99, 100.0 * frac) * 0.2).epsilon(1e-12));
  }
}

TEST_CASE("monotone non-increasing, strictly decreasing for the decaying kinds") {
  const double total = 1000.0;
  for (auto kind : {ScheduleKind::constant, ScheduleKind::linear, ScheduleKind::exponential}) {
    const auto s = make(kind);
    double prev = epsilon_at(s, 0.0, total);
    for (int t = 1; t <= 1000; t += 13) {
      const double eps = epsilon_at(s, static_cast<double>(t), total);
      CHECK(eps <= prev);
      if (kind != ScheduleKind::constant) CHECK(eps < prev);
      CHECK(eps >= 0.0);
      prev = eps;
    }
  }
}

TEST_CASE("exponential never reaches zero") {
  const auto s = make(ScheduleKind::exponential);
  CHECK(epsilon_at(s, 1000.0, 1000.0) > 0.0);
}

TEST_CASE("exponential overtakes linear in the tail") {
  const double total = 1000.0;
  for (double frac : {0.7, 0.9, 1.0}) {
    const double t = frac * total;
    const double lin = epsilon_at(make(ScheduleKind::linear), t, total);
    const double exp = epsilon_at(make(ScheduleKind::exponential), t, total);
    CHECK(exp > lin);
  }
}

TEST_CASE("zero total and out-of-range t are usage errors") {
  CHECK_THROWS_AS(epsilon_at(make(ScheduleKind::linear), 0.0, 0.0), clipppo::UsageError);
  CHECK_THROWS_AS(epsilon_at(make(ScheduleKind::linear), -1.0, 10.0), clipppo::UsageError);
  CHECK_THROWS_AS(epsilon_at(make(ScheduleKind::linear), 11.0, 10.0), clipppo::UsageError);
}

TEST_CASE("config strings round-trip") {
  CHECK(parse_schedule_kind("constant") == ScheduleKind::constant);
  CHECK(parse_schedule_kind("linear") == ScheduleKind::linear);
  CHECK(parse_schedule_kind("exp") == ScheduleKind::exponential);
  CHECK_THROWS_AS(parse_schedule_kind("cosine"), clipppo::UsageError);
  for (auto kind : {ScheduleKind::constant, ScheduleKind::linear, ScheduleKind::exponential})
    CHECK(parse_schedule_kind(to_string(kind)) == kind);
}

TEST_CASE("invalid schedule parameters are rejected") {
  CHECK_THROWS_AS(validate(make(ScheduleKind::linear, 0.0)), clipppo::UsageError);
  CHECK_THROWS_AS(validate(make(ScheduleKind::exponential, 0.2, 1.0)), clipppo::UsageError);
  CHECK_THROWS_AS(validate(make(ScheduleKind::exponential, 0.2, 0.0)), clipppo::UsageError);
  CHECK_NOTHROW(validate(make(ScheduleKind::exponential, 0.2, 0.99)));
}
