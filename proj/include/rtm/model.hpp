#pragma once

#include <cstdint>
#include <vector>

#include "rtm/literals.hpp"
#include "rtm/normalizer.hpp"
#include "rtm/rng.hpp"
#include "rtm/ta_state.hpp"
#include "rtm/weights.hpp"

namespace rtm {

struct RtmConfig {
  Variant variant = Variant::kIntegerWeights;
  int n_clauses = 100;            // m
  std::int64_t resolution = 100;  // T, divisor of the vote sum
  double specificity = 2.0;       // s, Type Ib rate 1/s
  int n_states = 100;             // N, states per automaton action
  double alpha = 0.01;            // learning rate, real-weight variant only

  // Start automata at N or N+1 uniformly instead of all at N.
  bool random_state_init = false;
  // Treat an empty clause as 0 at inference (it is always 1 in training).
  bool empty_clause_zero_at_inference = false;
  // Require c_j = 1 on the weight decrement branch as well.
  bool decrement_requires_fire = false;
  // Update real weights by +/- alpha instead of * (1 +/- alpha).
  bool additive_real_update = false;

  void validate() const;  // throws std::invalid_argument
};

// One regression machine: an automata team defining the clauses, the clause
// weights, and the affine map back to target units.
class RtmModel {
 public:
  RtmModel(RtmConfig cfg, int n_inputs, Normalizer norm);
  RtmModel(RtmConfig cfg, int n_inputs, Normalizer norm, Rng& rng);

  const RtmConfig& config() const { return cfg_; }
  int n_inputs() const { return ta_.n_inputs(); }
  int n_clauses() const { return cfg_.n_clauses; }
  const Normalizer& normalizer() const { return norm_; }

  TaStateMatrix& ta() { return ta_; }
  const TaStateMatrix& ta() const { return ta_; }
  WeightVector& weights() { return weights_; }
  const WeightVector& weights() const { return weights_; }

  double clause_weight(int clause) const { return weights_.value(clause); }

  // Weighted vote sum over firing clauses; fills `clause_out` when given.
  double predict_raw(const PackedLiterals& lits) const;
  double predict_raw(const PackedLiterals& lits, std::vector<Bit>& clause_out) const;

  // clamp(vote sum / T, 0, 1).
  double predict_norm(const PackedLiterals& lits) const;

  // Prediction in target units; honors the empty-clause inference policy.
  double predict(const BitVector& x) const;
  double predict_packed(const PackedLiterals& lits) const;

 private:
  RtmConfig cfg_;
  TaStateMatrix ta_;
  WeightVector weights_;
  Normalizer norm_;

  double raw_votes(const PackedLiterals& lits, std::vector<Bit>* clause_out,
                   bool empty_fires) const;
};

}  // namespace rtm
