#include "rtm/weights.hpp"

#include <stdexcept>
#include <string>

namespace rtm {

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::kPlain:
      return "rtm";
    case Variant::kIntegerWeights:
      return "rtm-iw";
    case Variant::kRealWeights:
      return "rtm-rw";
  }
  return "rtm";
}

Variant variant_from_name(std::string_view name) {
  if (name == "rtm") return Variant::kPlain;
  if (name == "rtm-iw") return Variant::kIntegerWeights;
  if (name == "rtm-rw") return Variant::kRealWeights;
  throw std::invalid_argument("unknown variant '" + std::string(name) +
                              "' (expected rtm, rtm-iw or rtm-rw)");
}

WeightVector WeightVector::integer_zeros(int n_clauses) {
  WeightVector w;
  w.kind = Variant::kIntegerWeights;
  w.ints.assign(n_clauses, 0);
  return w;
}

WeightVector WeightVector::real_ones(int n_clauses) {
  WeightVector w;
  w.kind = Variant::kRealWeights;
  w.reals.assign(n_clauses, 1.0);
  return w;
}

}  // namespace rtm
