#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "rtm/spl.hpp"

using namespace rtm;

TEST_CASE("spl_step moves one grid step and absorbs at the ends") {
  CHECK(spl_step({1.0, 10}, 1).lambda == doctest::Approx(1.0));
  CHECK(spl_step({0.0, 10}, 0).lambda == doctest::Approx(0.0));
  CHECK(spl_step({0.5, 10}, 1).lambda == doctest::Approx(0.6));
  CHECK(spl_step({0.5, 10}, 0).lambda == doctest::Approx(0.4));
}

TEST_CASE("spl state validation rejects off-grid and out-of-range values") {
  CHECK_THROWS_AS(spl_step({0.55, 10}, 1), std::invalid_argument);
  SplState bad{1.5, 10};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  SplEnvironment env{0.3, 0.5};
  CHECK_THROWS_AS(env.validate(), std::invalid_argument);
}

TEST_CASE("a perfect environment walks straight to the target") {
  Rng rng(1);
  const SplEnvironment env{0.3, 1.0};
  const auto traj = spl_run(env, {0.0, 10}, 50, rng);
  REQUIRE(traj.size() == 51);
  CHECK(traj[0] == doctest::Approx(0.0));
  CHECK(traj[1] == doctest::Approx(0.1));
  CHECK(traj[2] == doctest::Approx(0.2));
  CHECK(traj[3] == doctest::Approx(0.3));
  for (std::size_t i = 3; i < traj.size(); ++i) {
    CHECK(std::fabs(traj[i] - 0.3) <= 0.1 + 1e-12);
  }
}

TEST_CASE("with p = 1 the distance to the target never grows") {
  Rng rng(5);
  const SplEnvironment env{0.7, 1.0};
  const auto traj = spl_run(env, {0.0, 20}, 100, rng);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double before = std::fabs(traj[i - 1] - env.lambda_star);
    const double after = std::fabs(traj[i] - env.lambda_star);
    if (before > 0.05 + 1e-12) {  // one grid step
      CHECK(after <= before + 1e-12);
    }
  }
}

TEST_CASE("every trajectory value stays on the grid inside [0, 1]") {
  Rng rng(9);
  const SplEnvironment env{0.42, 0.75};
  const int N = 25;
  const auto traj = spl_run(env, {0.52, N}, 5000, rng);
  for (double v : traj) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    const double scaled = v * N;
    CHECK(std::fabs(scaled - std::round(scaled)) < 1e-9);
  }
}

TEST_CASE("noisy environment concentrates near the target") {
  // Monte-Carlo oracle for the asymptotic convergence claim at finite scale.
  const SplEnvironment env{0.3, 0.9};
  double acc = 0.0;
  const int n_seeds = 30;
  for (int seed = 1; seed <= n_seeds; ++seed) {
    Rng rng(seed);
    const auto traj = spl_run(env, {0.5, 100}, 10000, rng);
    const double mean =
        std::accumulate(traj.end() - 1000, traj.end(), 0.0) / 1000.0;
    acc += mean;
  }
  CHECK(std::fabs(acc / n_seeds - env.lambda_star) < 0.05);
}

TEST_CASE("a target at zero pulls the walker down from one") {
  const SplEnvironment env{0.0, 0.9};
  double acc = 0.0;
  const int n_seeds = 30;
  for (int seed = 1; seed <= n_seeds; ++seed) {
    Rng rng(1000 + seed);
    const auto traj = spl_run(env, {1.0, 100}, 10000, rng);
    acc += traj.back();
  }
  CHECK(acc / n_seeds < 0.1);
}
