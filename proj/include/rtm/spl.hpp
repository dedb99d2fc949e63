#pragma once

#include <vector>

#include "rtm/literals.hpp"
#include "rtm/rng.hpp"

namespace rtm {

// Position on the discretized unit interval {0, 1/N, ..., 1}.
struct SplState {
  double lambda = 0.5;
  int n_steps = 100;  // N, grid resolution

  void validate() const;  // throws std::invalid_argument off the grid
};

// Informative but noisy oracle: points toward lambda_star with probability p.
struct SplEnvironment {
  double lambda_star = 0.5;
  double p = 0.9;  // must be > 0.5

  void validate() const;
};

// One grid move: right on e = 1, left on e = 0, absorbing at both ends.
SplState spl_step(SplState state, Bit e);

// Runs `steps` environment interactions and returns the visited positions,
// entry 0 being the initial state (length steps + 1). When the walker sits
// exactly on lambda_star the suggested direction is a fair coin.
std::vector<double> spl_run(const SplEnvironment& env, SplState init, int steps,
                            Rng& rng);

}  // namespace rtm
