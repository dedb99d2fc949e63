#include "rtm/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtm {

FeedbackType feedback_type(double y_norm, double target_norm) {
  if (y_norm < target_norm) return FeedbackType::kTypeI;
  if (y_norm > target_norm) return FeedbackType::kTypeII;
  return FeedbackType::kNone;
}

std::vector<Bit> clause_activation(double y_norm, double target_norm,
                                   int n_clauses, Rng& rng) {
  const double p = std::clamp(std::fabs(y_norm - target_norm), 0.0, 1.0);
  std::vector<int> activated;
  sample_bernoulli_indices(n_clauses, p, rng, activated);
  std::vector<Bit> mask(n_clauses, 0);
  for (int j : activated) mask[j] = 1;
  return mask;
}

namespace detail {

bool literal_value(const PackedLiterals& lits, int k) {
  return (lits.words[k / 64] >> (k % 64)) & 1;
}

void select_type_ia_into(std::span<const Bit> clause_out,
                         std::span<const int> activated,
                         const PackedLiterals& lits,
                         std::vector<IndexPair>& out) {
  for (int j : activated) {
    if (!clause_out[j]) continue;
    for (int k = 0; k < lits.n_literals; ++k) {
      if (literal_value(lits, k)) out.emplace_back(j, k);
    }
  }
}

void select_type_ib_into(std::span<const Bit> clause_out,
                         std::span<const int> activated,
                         const PackedLiterals& lits, double specificity,
                         Rng& rng, std::vector<IndexPair>& out) {
  if (specificity < 1.0) {
    throw std::invalid_argument("select_type_ib: specificity must be >= 1");
  }
  const double q = 1.0 / specificity;
  for (int j : activated) {
    const bool fired = clause_out[j];
    for (int k = 0; k < lits.n_literals; ++k) {
      if (fired && literal_value(lits, k)) continue;
      if (rng.bernoulli(q)) out.emplace_back(j, k);
    }
  }
}

void select_type_ii_into(std::span<const Bit> clause_out,
                         std::span<const int> activated,
                         const PackedLiterals& lits,
                         std::vector<IndexPair>& out) {
  for (int j : activated) {
    if (!clause_out[j]) continue;
    for (int k = 0; k < lits.n_literals; ++k) {
      if (!literal_value(lits, k)) out.emplace_back(j, k);
    }
  }
}

}  // namespace detail

namespace {

std::vector<int> activated_indices(std::span<const Bit> activation) {
  std::vector<int> idx;
  for (int j = 0; j < static_cast<int>(activation.size()); ++j) {
    if (activation[j]) idx.push_back(j);
  }
  return idx;
}

}  // namespace

std::vector<IndexPair> select_type_ia(std::span<const Bit> clause_out,
                                      std::span<const Bit> activation,
                                      const LiteralVector& lits) {
  std::vector<IndexPair> out;
  detail::select_type_ia_into(clause_out, activated_indices(activation),
                              pack_literals(lits), out);
  return out;
}

std::vector<IndexPair> select_type_ib(std::span<const Bit> clause_out,
                                      std::span<const Bit> activation,
                                      const LiteralVector& lits,
                                      double specificity, Rng& rng) {
  std::vector<IndexPair> out;
  detail::select_type_ib_into(clause_out, activated_indices(activation),
                              pack_literals(lits), specificity, rng, out);
  return out;
}

std::vector<IndexPair> select_type_ii(std::span<const Bit> clause_out,
                                      std::span<const Bit> activation,
                                      const LiteralVector& lits) {
  std::vector<IndexPair> out;
  detail::select_type_ii_into(clause_out, activated_indices(activation),
                              pack_literals(lits), out);
  return out;
}

void update_weights_integer(WeightVector& w, double y_norm, double target_norm,
                            std::span<const Bit> clause_out,
                            std::span<const Bit> activation,
                            bool decrement_requires_fire) {
  if (w.kind != Variant::kIntegerWeights) {
    throw std::invalid_argument("update_weights_integer: weight kind is not integer");
  }
  const bool low = y_norm < target_norm;
  const bool high = y_norm > target_norm;
  if (!low && !high) return;
  for (std::size_t j = 0; j < w.ints.size(); ++j) {
    if (!activation[j]) continue;
    if (low && clause_out[j]) {
      w.ints[j] += 1;
    } else if (high && w.ints[j] > 0 &&
               (!decrement_requires_fire || clause_out[j])) {
      w.ints[j] -= 1;
    }
  }
}

void update_weights_real(WeightVector& w, double y_norm, double target_norm,
                         std::span<const Bit> clause_out,
                         std::span<const Bit> activation, double alpha,
                         bool additive, bool decrement_requires_fire) {
  if (w.kind != Variant::kRealWeights) {
    throw std::invalid_argument("update_weights_real: weight kind is not real");
  }
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("update_weights_real: alpha must be > 0");
  }
  const bool low = y_norm < target_norm;
  const bool high = y_norm > target_norm;
  if (!low && !high) return;
  for (std::size_t j = 0; j < w.reals.size(); ++j) {
    if (!activation[j]) continue;
    if (low && clause_out[j]) {
      w.reals[j] = additive ? w.reals[j] + alpha : w.reals[j] * (1.0 + alpha);
    } else if (high && w.reals[j] > 0.0 &&
               (!decrement_requires_fire || clause_out[j])) {
      w.reals[j] = additive ? std::max(0.0, w.reals[j] - alpha)
                            : w.reals[j] * (1.0 - alpha);
    }
  }
}

}  // namespace rtm
