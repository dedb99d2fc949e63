#pragma once

namespace rtm {

// Affine map between target units and the unit interval. The range is the
// theoretical output range of the generating function, not the empirical
// sample range, so one vote at resolution T = 2^o - 1 equals one output
// level.
struct Normalizer {
  double min = 0.0;
  double max = 1.0;

  // Clamped into [0, 1]; throws std::invalid_argument on a degenerate range.
  double normalize(double y) const;

  double denormalize(double y_norm) const;

  bool operator==(const Normalizer&) const = default;
};

// [0, 100 * (2^n_bits - 1)], the output range of the synthetic generator.
Normalizer theoretical_range(int n_bits);

}  // namespace rtm
