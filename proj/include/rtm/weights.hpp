#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace rtm {

enum class Variant {
  kPlain,           // unity weights, vote sum counts firing clauses
  kIntegerWeights,  // non-negative integers, start at 0
  kRealWeights,     // non-negative reals, start at 1
};

std::string_view variant_name(Variant v);           // "rtm" | "rtm-iw" | "rtm-rw"
Variant variant_from_name(std::string_view name);   // throws on unknown name

// Per-clause weights. Unity weights have no storage; every clause counts
// exactly once.
struct WeightVector {
  Variant kind = Variant::kPlain;
  std::vector<std::int64_t> ints;
  std::vector<double> reals;

  static WeightVector unity() { return {}; }
  static WeightVector integer_zeros(int n_clauses);
  static WeightVector real_ones(int n_clauses);

  double value(int clause) const {
    switch (kind) {
      case Variant::kIntegerWeights:
        return static_cast<double>(ints[clause]);
      case Variant::kRealWeights:
        return reals[clause];
      default:
        return 1.0;
    }
  }
};

}  // namespace rtm
