#include "rtm/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace rtm {

void RtmConfig::validate() const {
  if (n_clauses < 1) throw std::invalid_argument("RtmConfig: n_clauses must be >= 1");
  if (resolution < 1) throw std::invalid_argument("RtmConfig: resolution T must be >= 1");
  if (specificity < 1.0) throw std::invalid_argument("RtmConfig: specificity s must be >= 1");
  if (n_states < 1) throw std::invalid_argument("RtmConfig: n_states must be >= 1");
  if (variant == Variant::kRealWeights && !(alpha > 0.0)) {
    throw std::invalid_argument("RtmConfig: alpha must be > 0 for rtm-rw");
  }
}

namespace {

WeightVector make_weights(const RtmConfig& cfg) {
  switch (cfg.variant) {
    case Variant::kIntegerWeights:
      return WeightVector::integer_zeros(cfg.n_clauses);
    case Variant::kRealWeights:
      return WeightVector::real_ones(cfg.n_clauses);
    default:
      return WeightVector::unity();
  }
}

}  // namespace

RtmModel::RtmModel(RtmConfig cfg, int n_inputs, Normalizer norm)
    : cfg_(cfg),
      ta_(cfg.n_clauses, n_inputs, cfg.n_states),
      weights_(make_weights(cfg)),
      norm_(norm) {
  cfg_.validate();
}

RtmModel::RtmModel(RtmConfig cfg, int n_inputs, Normalizer norm, Rng& rng)
    : cfg_(cfg),
      ta_(cfg.random_state_init
              ? TaStateMatrix::random_init(cfg.n_clauses, n_inputs, cfg.n_states, rng)
              : TaStateMatrix(cfg.n_clauses, n_inputs, cfg.n_states)),
      weights_(make_weights(cfg)),
      norm_(norm) {
  cfg_.validate();
}

double RtmModel::raw_votes(const PackedLiterals& lits,
                           std::vector<Bit>* clause_out,
                           bool empty_fires) const {
  if (clause_out) clause_out->assign(cfg_.n_clauses, 0);
  double votes = 0.0;
  std::int64_t int_votes = 0;
  const bool integral = cfg_.variant != Variant::kRealWeights;
  for (int j = 0; j < cfg_.n_clauses; ++j) {
    Bit c = ta_.evaluate(j, lits);
    if (c && !empty_fires && ta_.include_count(j) == 0) c = 0;
    if (!c) continue;
    if (clause_out) (*clause_out)[j] = 1;
    if (integral) {
      int_votes += cfg_.variant == Variant::kPlain ? 1 : weights_.ints[j];
    } else {
      votes += weights_.reals[j];
    }
  }
  return integral ? static_cast<double>(int_votes) : votes;
}

double RtmModel::predict_raw(const PackedLiterals& lits) const {
  return raw_votes(lits, nullptr, true);
}

double RtmModel::predict_raw(const PackedLiterals& lits,
                             std::vector<Bit>& clause_out) const {
  return raw_votes(lits, &clause_out, true);
}

double RtmModel::predict_norm(const PackedLiterals& lits) const {
  const double y = predict_raw(lits) / static_cast<double>(cfg_.resolution);
  return std::clamp(y, 0.0, 1.0);
}

double RtmModel::predict(const BitVector& x) const {
  return predict_packed(pack_input(x));
}

double RtmModel::predict_packed(const PackedLiterals& lits) const {
  const double raw = raw_votes(lits, nullptr, !cfg_.empty_clause_zero_at_inference);
  const double clamped =
      std::clamp(raw, 0.0, static_cast<double>(cfg_.resolution));
  // Multiply before dividing: integer vote sums then map exactly onto the
  // integer output levels of the synthetic targets.
  return norm_.min +
         clamped * (norm_.max - norm_.min) / static_cast<double>(cfg_.resolution);
}

}  // namespace rtm
