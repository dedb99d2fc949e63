#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rtm/literals.hpp"
#include "rtm/normalizer.hpp"
#include "rtm/rng.hpp"

namespace rtm {

struct RegressionSample {
  BitVector x;
  double target = 0.0;  // target units

  bool operator==(const RegressionSample&) const = default;
};

// Synthetic family: o i.i.d. uniform bits, target = 100 * decimal(x), with
// optional additive Gaussian noise on the training targets only.
struct DatasetSpec {
  int n_bits = 3;
  bool noisy = false;
  int n_train = 8000;
  int n_test = 2000;
  double noise_sigma = 0.0;  // target units; 0 unless noisy
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument
};

inline constexpr double kDefaultNoiseSigma = 7.0;

// The six standard benchmarks: odd ids noise-free, even ids noisy, with
// 2, 3 and 4 input bits respectively.
DatasetSpec standard_dataset(int id);  // id in [1, 6]

struct Dataset {
  std::vector<RegressionSample> samples;
  Normalizer norm;
  int n_bits = 0;

  std::size_t size() const { return samples.size(); }
};

double clean_target(const BitVector& x);  // 100 * decimal(x)

std::pair<Dataset, Dataset> generate(const DatasetSpec& spec, Rng& rng);

// Copy with targets mapped (and clamped) into [0, 1] by ds.norm.
Dataset normalize(const Dataset& ds);
double denormalize(double y_norm, const Normalizer& norm);

// Header `x1,...,xo,y`; targets in original units, round-trip lossless.
void write_csv(const Dataset& ds, const std::string& path);
Dataset read_csv(const std::string& path);  // throws std::runtime_error with line number

}  // namespace rtm
