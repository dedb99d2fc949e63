#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rtm {

// Deterministic random source. Every stochastic decision in the library goes
// through this class: std::mt19937_64 output is pinned by the standard, and
// the derived draws below avoid the implementation-defined std distributions,
// so a fixed seed reproduces a run bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_unit() < p; }

  // Uniform integer in [0, n), n > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n);

  // Gaussian deviate (polar Box-Muller, spare cached).
  double normal(double mean, double stddev);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Appends to `out`, in increasing order, every index in [0, n) retained by an
// i.i.d. Bernoulli(p) draw. Geometric gap sampling keeps the cost proportional
// to the number of retained indices rather than n.
void sample_bernoulli_indices(int n, double p, Rng& rng, std::vector<int>& out);

// In-place Fisher-Yates shuffle (std::shuffle is implementation-defined).
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace rtm
