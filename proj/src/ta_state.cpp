#include "rtm/ta_state.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rtm {

namespace {

void check_positive(int value, const char* name) {
  if (value < 1) {
    throw std::invalid_argument(std::string("TaStateMatrix: ") + name +
                                " must be >= 1");
  }
}

}  // namespace

TaStateMatrix::TaStateMatrix(int n_clauses, int n_inputs, int n_states)
    : m_(n_clauses),
      o_(n_inputs),
      n_states_(n_states),
      words_per_clause_((2 * n_inputs + 63) / 64) {
  check_positive(n_clauses, "n_clauses");
  check_positive(n_inputs, "n_inputs");
  check_positive(n_states, "n_states");
  states_.assign(static_cast<std::size_t>(m_) * n_literals(), n_states_);
  masks_.assign(static_cast<std::size_t>(m_) * words_per_clause_, 0);
  include_counts_.assign(m_, 0);
}

TaStateMatrix TaStateMatrix::random_init(int n_clauses, int n_inputs,
                                         int n_states, Rng& rng) {
  TaStateMatrix ta(n_clauses, n_inputs, n_states);
  for (int j = 0; j < n_clauses; ++j) {
    for (int k = 0; k < ta.n_literals(); ++k) {
      if (rng.bernoulli(0.5)) ta.set_state(j, k, n_states + 1);
    }
  }
  return ta;
}

int TaStateMatrix::check_clause(int clause) const {
  if (clause < 0 || clause >= m_) {
    throw std::out_of_range("TaStateMatrix: clause index " +
                            std::to_string(clause) + " out of range [0, " +
                            std::to_string(m_) + ")");
  }
  return clause;
}

int TaStateMatrix::slot(int clause, int literal) const {
  check_clause(clause);
  if (literal < 0 || literal >= n_literals()) {
    throw std::out_of_range("TaStateMatrix: literal index " +
                            std::to_string(literal) + " out of range [0, " +
                            std::to_string(n_literals()) + ")");
  }
  return clause * n_literals() + literal;
}

int TaStateMatrix::state(int clause, int literal) const {
  return states_[slot(clause, literal)];
}

void TaStateMatrix::set_state(int clause, int literal, int value) {
  if (value < 1 || value > 2 * n_states_) {
    throw std::invalid_argument("TaStateMatrix: state " +
                                std::to_string(value) + " outside [1, " +
                                std::to_string(2 * n_states_) + "]");
  }
  const int idx = slot(clause, literal);
  const bool was_included = states_[idx] > n_states_;
  const bool is_included = value > n_states_;
  states_[idx] = value;
  if (was_included != is_included) {
    const std::size_t word =
        static_cast<std::size_t>(clause) * words_per_clause_ + literal / 64;
    masks_[word] ^= std::uint64_t{1} << (literal % 64);
    include_counts_[clause] += is_included ? 1 : -1;
  }
}

bool TaStateMatrix::includes(int clause, int literal) const {
  return states_[slot(clause, literal)] > n_states_;
}

std::vector<int> TaStateMatrix::include_set(int clause) const {
  check_clause(clause);
  std::vector<int> out;
  for (int k = 0; k < n_literals(); ++k) {
    if (states_[clause * n_literals() + k] > n_states_) out.push_back(k);
  }
  return out;
}

Bit TaStateMatrix::evaluate(int clause, const PackedLiterals& lits) const {
  check_clause(clause);
  if (lits.n_literals != n_literals()) {
    throw std::invalid_argument("TaStateMatrix: literal width mismatch");
  }
  const std::uint64_t* mask =
      masks_.data() + static_cast<std::size_t>(clause) * words_per_clause_;
  for (int w = 0; w < words_per_clause_; ++w) {
    if ((mask[w] & lits.words[w]) != mask[w]) return 0;
  }
  return 1;
}

std::span<const std::uint64_t> TaStateMatrix::clause_mask(int clause) const {
  check_clause(clause);
  return {masks_.data() + static_cast<std::size_t>(clause) * words_per_clause_,
          static_cast<std::size_t>(words_per_clause_)};
}

void TaStateMatrix::bump(int clause, int literal, int delta) {
  const int idx = slot(clause, literal);
  const int next = states_[idx] + delta;
  if (next < 1 || next > 2 * n_states_) return;  // saturate
  const bool was_included = states_[idx] > n_states_;
  const bool is_included = next > n_states_;
  states_[idx] = next;
  if (was_included != is_included) {
    const std::size_t word =
        static_cast<std::size_t>(clause) * words_per_clause_ + literal / 64;
    masks_[word] ^= std::uint64_t{1} << (literal % 64);
    include_counts_[clause] += is_included ? 1 : -1;
  }
}

void TaStateMatrix::apply_feedback(const FeedbackSets& fb) {
  for (const auto& [j, k] : fb.ia) bump(j, k, +1);
  for (const auto& [j, k] : fb.ib) bump(j, k, -1);
  for (const auto& [j, k] : fb.ii) bump(j, k, +1);
}

Bit evaluate_clause(std::span<const int> include, const LiteralVector& lits,
                    bool empty_fires) {
  if (include.empty()) return empty_fires ? 1 : 0;
  for (int k : include) {
    if (k < 0 || k >= lits.n_literals()) {
      throw std::out_of_range("evaluate_clause: literal index " +
                              std::to_string(k) + " out of range");
    }
    if (!lits.bits[k]) return 0;
  }
  return 1;
}

}  // namespace rtm
