#include <doctest.h>

#include "avgov/params.hpp"

using namespace avgov;

TEST_CASE("derive_schedule: default parameters are exact") {
  const auto s = derive_schedule(0.9, 19.0, 1.0);
  CHECK(s.a == 2.0);
  CHECK(s.s == 17.0);
  CHECK(s.a_prime == 1.0);
  CHECK(s.epsilon == 19.0);
  CHECK((s.a_prime + s.s) / (s.a_prime + s.s + s.a) == 18.0 / 20.0);
  CHECK(validate_schedule(s).all_ok);
}

TEST_CASE("derive_schedule: small epsilon instance") {
  const auto s = derive_schedule(0.6, 1.5, 1.0);
  CHECK(s.a == doctest::Approx(1.0));
  CHECK(s.s == doctest::Approx(0.5));
}

TEST_CASE("derive_schedule rejects violated conditions") {
  CHECK_THROWS_AS(derive_schedule(0.0, 19.0, 1.0), ScheduleError);
  CHECK_THROWS_AS(derive_schedule(1.0, 19.0, 1.0), ScheduleError);
  CHECK_THROWS_AS(derive_schedule(0.5, 0.5, 1.0), ScheduleError);  // 1/(1+eps) >= T
  CHECK_THROWS_AS(derive_schedule(0.9, 19.0, 0.0), ScheduleError);
  CHECK_THROWS_AS(derive_schedule(0.9, 5.0, 1.0), ScheduleError);  // a = 0.6 < a'
  CHECK_NOTHROW(derive_schedule(0.9, 5.0, 1.0, false));
}

TEST_CASE("validate_schedule flags a broken identity") {
  auto s = derive_schedule(0.9, 19.0, 1.0);
  s.s = 16.0;
  const auto d = validate_schedule(s);
  CHECK_FALSE(d.all_ok);
  CHECK(d.threshold_identity_residual > 1e-3);
}

TEST_CASE("property: derive then validate round-trips") {
  for (double T = 0.55; T < 0.96; T += 0.05) {
    for (double eps = 1.0; eps < 60.0; eps *= 1.7) {
      if (!(1.0 / (1.0 + eps) < T) || (1.0 + eps) * (1.0 - T) <= 1.0) continue;
      const auto d = validate_schedule(derive_schedule(T, eps, 1.3));
      CHECK(d.threshold_identity_residual <= 1e-12);
      CHECK(d.inflection_residual <= 1e-12);
      CHECK(d.all_ok);
    }
  }
}

TEST_CASE("safety envelope branches") {
  const auto s = derive_schedule(0.9, 19.0, 1.0);
  const auto plain = deviation_safety_threshold(s, 0.0);
  CHECK(plain.proof_branch == doctest::Approx(0.9));
  CHECK(plain.statement_branch == doctest::Approx(2.1 / 19.0));
  CHECK(plain.effective_threshold == plain.proof_branch);
  const auto with_g = deviation_safety_threshold(s, 1.0);
  CHECK(with_g.proof_branch == doctest::Approx(0.855));
  CHECK(with_g.statement_branch == doctest::Approx(0.105));
  CHECK(deviation_safety_threshold(s, 1.0, ThresholdVariant::statement).effective_threshold ==
        doctest::Approx(0.105));
}

TEST_CASE("max_discount") {
  CHECK(max_discount(0.0, 0.1) == 0.0);
  CHECK(max_discount(19.0, 0.1) == doctest::Approx(19.0 / 21.1));
  CHECK(max_discount(1.5, 0.1) == doctest::Approx(1.5 / 1.85));
  for (double eps : {0.1, 1.0, 10.0, 1000.0}) {
    const double g = max_discount(eps, 0.05);
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
  }
}

TEST_CASE("external_bound_delta is the largest normalized external over a") {
  const auto s = derive_schedule(0.9, 19.0, 1.0);
  const Instance inst({0.5, 1.0}, Grid<double>::from_rows({{0.5, 0.5}, {0.5, 0.5}}),
                      Grid<double>::from_rows({{0.1, 0.0}, {0.1, 0.3}}));
  CHECK(external_bound_delta(inst, s) == doctest::Approx(0.15));
}
