#include "rtm/normalizer.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtm {

double Normalizer::normalize(double y) const {
  if (!(max > min)) {
    throw std::invalid_argument("Normalizer: degenerate range (max <= min)");
  }
  return std::clamp((y - min) / (max - min), 0.0, 1.0);
}

double Normalizer::denormalize(double y_norm) const {
  if (!(max > min)) {
    throw std::invalid_argument("Normalizer: degenerate range (max <= min)");
  }
  return min + y_norm * (max - min);
}

Normalizer theoretical_range(int n_bits) {
  if (n_bits < 1 || n_bits > 30) {
    throw std::invalid_argument("theoretical_range: n_bits outside [1, 30]");
  }
  return {0.0, 100.0 * ((1 << n_bits) - 1)};
}

}  // namespace rtm
