#include "rtm/spl.hpp"

#include <cmath>
#include <stdexcept>

namespace rtm {

void SplState::validate() const {
  if (n_steps < 1) throw std::invalid_argument("SplState: n_steps must be >= 1");
  if (lambda < 0.0 || lambda > 1.0) {
    throw std::invalid_argument("SplState: lambda outside [0, 1]");
  }
  const double scaled = lambda * n_steps;
  if (std::fabs(scaled - std::round(scaled)) > 1e-9) {
    throw std::invalid_argument("SplState: lambda is not on the 1/N grid");
  }
}

void SplEnvironment::validate() const {
  if (lambda_star < 0.0 || lambda_star > 1.0) {
    throw std::invalid_argument("SplEnvironment: lambda_star outside [0, 1]");
  }
  if (!(p > 0.5) || p > 1.0) {
    throw std::invalid_argument("SplEnvironment: p must be in (0.5, 1]");
  }
}

SplState spl_step(SplState state, Bit e) {
  state.validate();
  // Integer grid position keeps every visited value exactly on the grid.
  int pos = static_cast<int>(std::lround(state.lambda * state.n_steps));
  if (e && pos < state.n_steps) {
    ++pos;
  } else if (!e && pos > 0) {
    --pos;
  }
  state.lambda = static_cast<double>(pos) / state.n_steps;
  return state;
}

std::vector<double> spl_run(const SplEnvironment& env, SplState init, int steps,
                            Rng& rng) {
  env.validate();
  init.validate();
  if (steps < 1) throw std::invalid_argument("spl_run: steps must be >= 1");
  std::vector<double> trajectory;
  trajectory.reserve(steps + 1);
  trajectory.push_back(init.lambda);
  SplState state = init;
  for (int n = 0; n < steps; ++n) {
    Bit towards;
    if (state.lambda < env.lambda_star) {
      towards = 1;
    } else if (state.lambda > env.lambda_star) {
      towards = 0;
    } else {
      towards = rng.bernoulli(0.5) ? 1 : 0;  // both directions equally wrong
    }
    const Bit e = rng.bernoulli(env.p) ? towards : static_cast<Bit>(1 - towards);
    state = spl_step(state, e);
    trajectory.push_back(state.lambda);
  }
  return trajectory;
}

}  // namespace rtm
