#pragma once

#include <span>
#include <vector>

#include "rtm/literals.hpp"
#include "rtm/rng.hpp"
#include "rtm/ta_state.hpp"
#include "rtm/weights.hpp"

namespace rtm {

enum class FeedbackType { kTypeI, kTypeII, kNone };

// Type I raises the vote sum when the prediction is low, Type II lowers it
// when the prediction is high; exact equality gives no feedback.
FeedbackType feedback_type(double y_norm, double target_norm);

// Per-clause activation mask: each entry is 1 independently with probability
// |y_norm - target_norm| clamped into [0, 1].
std::vector<Bit> clause_activation(double y_norm, double target_norm,
                                   int n_clauses, Rng& rng);

// Pairs (j, k) with l_k = 1, c_j = 1 and p_j = 1: reinforce include so the
// clause grows toward the current input.
std::vector<IndexPair> select_type_ia(std::span<const Bit> clause_out,
                                      std::span<const Bit> activation,
                                      const LiteralVector& lits);

// Pairs with (l_k = 0 or c_j = 0) and p_j = 1, subsampled Bernoulli(1/s):
// reinforce exclude to combat over-fitting.
std::vector<IndexPair> select_type_ib(std::span<const Bit> clause_out,
                                      std::span<const Bit> activation,
                                      const LiteralVector& lits,
                                      double specificity, Rng& rng);

// Pairs with l_k = 0, c_j = 1 and p_j = 1: push a zero-valued literal into a
// firing clause to turn its output off.
std::vector<IndexPair> select_type_ii(std::span<const Bit> clause_out,
                                      std::span<const Bit> activation,
                                      const LiteralVector& lits);

// Round update of integer clause weights: +1 when the prediction is low and
// the clause fired under activation, -1 when the prediction is high and the
// clause was activated, floored at 0. `decrement_requires_fire` adds the
// c_j = 1 condition to the decrement branch.
void update_weights_integer(WeightVector& w, double y_norm, double target_norm,
                            std::span<const Bit> clause_out,
                            std::span<const Bit> activation,
                            bool decrement_requires_fire = false);

// Real-weight counterpart: multiplies by (1 +/- alpha), or adds +/- alpha
// when `additive` is set (floored at 0).
void update_weights_real(WeightVector& w, double y_norm, double target_norm,
                         std::span<const Bit> clause_out,
                         std::span<const Bit> activation, double alpha,
                         bool additive = false,
                         bool decrement_requires_fire = false);

namespace detail {

// Append variants driven by an explicit activated-clause index list; the
// public selectors and the training loop share these so they consume the
// random stream identically.
void select_type_ia_into(std::span<const Bit> clause_out,
                         std::span<const int> activated,
                         const PackedLiterals& lits,
                         std::vector<IndexPair>& out);
void select_type_ib_into(std::span<const Bit> clause_out,
                         std::span<const int> activated,
                         const PackedLiterals& lits, double specificity,
                         Rng& rng, std::vector<IndexPair>& out);
void select_type_ii_into(std::span<const Bit> clause_out,
                         std::span<const int> activated,
                         const PackedLiterals& lits,
                         std::vector<IndexPair>& out);

bool literal_value(const PackedLiterals& lits, int k);

}  // namespace detail

}  // namespace rtm
