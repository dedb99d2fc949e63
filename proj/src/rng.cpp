#include "rtm/rng.hpp"

#include <cmath>
#include <limits>

namespace rtm {

std::uint64_t Rng::below(std::uint64_t n) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % n;
}

double Rng::normal(double mean, double stddev) {
  if (has_spare_) {
    has_spare_ = false;
    return mean + stddev * spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_unit() - 1.0;
    v = 2.0 * next_unit() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return mean + stddev * u * scale;
}

void sample_bernoulli_indices(int n, double p, Rng& rng, std::vector<int>& out) {
  if (n <= 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (int i = 0; i < n; ++i) out.push_back(i);
    return;
  }
  const double log_q = std::log1p(-p);
  int i = 0;
  while (i < n) {
    const double u = 1.0 - rng.next_unit();  // (0, 1]
    const double gap = std::log(u) / log_q;  // geometric failure count
    if (gap >= static_cast<double>(n - i)) break;
    i += static_cast<int>(gap);
    out.push_back(i);
    ++i;
  }
}

}  // namespace rtm
