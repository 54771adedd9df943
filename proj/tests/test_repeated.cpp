#include <doctest.h>

#include <cmath>

#include "avgov/params.hpp"
#include "avgov/repeated.hpp"

using namespace avgov;

namespace {

WorldConfig small_world() {
  WorldConfig w;
  w.expertise = {0.9, 0.6};
  w.zeta = 0.05;
  w.horizon = 200;
  w.seed = 42;
  return w;
}

}  // namespace

TEST_CASE("delayed_update moves toward omega by at most zeta") {
  CHECK(delayed_update(0.5, 0.9, 0.05) == doctest::Approx(0.525));
  CHECK(delayed_update(0.5, 0.51, 0.05) == doctest::Approx(0.51));
  CHECK(delayed_update(0.5, 0.1, 0.05) == doctest::Approx(0.475));
  CHECK(delayed_update(0.5, 0.49, 0.05) == doctest::Approx(0.49));
  CHECK_THROWS_AS(delayed_update(0.0, 0.5, 0.05), ContractError);
  CHECK_THROWS_AS(delayed_update(0.5, 0.5, 1.0), ContractError);
}

TEST_CASE("correct_fraction") {
  CHECK(correct_fraction(0, 0) == kInitialWeight);
  CHECK(correct_fraction(3, 4) == 0.75);
  CHECK_THROWS_AS(correct_fraction(5, 4), ContractError);
}

TEST_CASE("validate_world") {
  auto w = small_world();
  CHECK_NOTHROW(validate_world(w));
  w.zeta = 0.0;
  CHECK_THROWS_AS(validate_world(w), ContractError);
  w = small_world();
  w.gamma = 1.0;
  CHECK_THROWS_AS(validate_world(w), ContractError);
  w = small_world();
  w.expertise = {1.2};
  CHECK_THROWS_AS(validate_world(w), ContractError);
}

TEST_CASE("sampled beliefs are degenerate") {
  auto rng = round_rng(5, 0);
  const auto sample = sample_round(small_world(), rng);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const double p = sample.beliefs(i, j);
      CHECK((p == 0.0 || p == 1.0));
    }
  }
}

TEST_CASE("runs are deterministic per seed") {
  const auto s = derive_schedule(0.9, 19.0, 1.0);
  const auto a = run(small_world(), s, Policy::honest());
  const auto b = run(small_world(), s, Policy::honest());
  CHECK(a.final_weights == b.final_weights);
  CHECK(a.discounted_realized == b.discounted_realized);
  auto other = small_world();
  other.seed = 43;
  CHECK(run(other, s, Policy::honest()).final_weights != a.final_weights);
}

TEST_CASE("property: weights stay in the zeta bracket and counters only move on reveals") {
  const auto s = derive_schedule(0.9, 19.0, 1.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto world = small_world();
    world.seed = seed;
    const auto trace = run(world, s, Policy::honest());
    std::size_t revealed = 0;
    for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
      const auto& r = trace.rounds[t];
      if (r.winner) ++revealed;
      CHECK(r.revealed_quality.has_value() == r.winner.has_value());
      const auto& next = t + 1 < trace.rounds.size() ? trace.rounds[t + 1].weights
                                                     : trace.final_weights;
      for (std::size_t i = 0; i < next.size(); ++i) {
        CHECK(next[i] <= (1.0 + world.zeta) * r.weights[i]);
        CHECK(next[i] >= (1.0 - world.zeta) * r.weights[i]);
      }
    }
    CHECK(revealed == trace.revealed);
    for (auto c : trace.correct) CHECK(c <= trace.revealed);
  }
}

TEST_CASE("discounted_sum") {
  CHECK(discounted_sum({1.0, 1.0, 1.0}, 0.5) == doctest::Approx(1.75));
  CHECK(discounted_sum({2.0, 5.0}, 0.0) == 2.0);
}

TEST_CASE("deviation_gap: honest plan is searched and the bound holds") {
  const auto s = derive_schedule(0.6, 1.5, 1.0);
  WorldConfig world;
  world.expertise = {0.9, 0.75, 0.6};
  world.zeta = 0.1;
  world.gamma = 0.9 * max_discount(s.epsilon, world.zeta);
  world.seed = 3;
  const auto gap = deviation_gap(world, s, 0, 3);
  CHECK(gap.plans_searched == 64);
  CHECK(gap.discount_precondition_ok);
  CHECK(gap.best_deviation_total >= gap.honest_total - 1e-12);
  CHECK(gap.bounded_ratio <= gap.bound);
  CHECK(gap.bound == doctest::Approx(5.5));
}

TEST_CASE("deviation_gap refuses oversized searches") {
  WorldConfig world;
  world.expertise = {0.9};
  world.proposals_per_round = 4;
  CHECK_THROWS_AS(deviation_gap(world, derive_schedule(0.9, 19.0, 1.0), 0, 5), GuardError);
}
