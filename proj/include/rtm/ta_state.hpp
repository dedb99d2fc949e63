#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rtm/literals.hpp"
#include "rtm/rng.hpp"

namespace rtm {

using IndexPair = std::pair<int, int>;  // (clause, literal), zero-based

// Index pairs targeted by one feedback round. `ia` and `ii` entries are
// rewarded toward include (+1), `ib` entries toward exclude (-1).
struct FeedbackSets {
  std::vector<IndexPair> ia;
  std::vector<IndexPair> ib;
  std::vector<IndexPair> ii;

  void clear() {
    ia.clear();
    ib.clear();
    ii.clear();
  }
};

// Team of two-action Tsetlin automata, one per (clause, literal) slot.
// States live in {1..2N}; a literal is included in its clause iff the state
// exceeds N. A per-clause include bitmask is kept in sync with the states so
// clause evaluation is a handful of word operations.
class TaStateMatrix {
 public:
  // All automata start at state N, one reward away from flipping to include.
  TaStateMatrix(int n_clauses, int n_inputs, int n_states);

  // Alternative start: each automaton at N or N+1 with equal probability.
  static TaStateMatrix random_init(int n_clauses, int n_inputs, int n_states,
                                   Rng& rng);

  int n_clauses() const { return m_; }
  int n_inputs() const { return o_; }
  int n_literals() const { return 2 * o_; }
  int n_states() const { return n_states_; }

  int state(int clause, int literal) const;
  void set_state(int clause, int literal, int value);

  bool includes(int clause, int literal) const;
  int include_count(int clause) const { return include_counts_[check_clause(clause)]; }

  // Sorted literal indices with state > N. Throws std::out_of_range.
  std::vector<int> include_set(int clause) const;

  // Conjunction of the included literals; the empty conjunction is 1.
  Bit evaluate(int clause, const PackedLiterals& lits) const;

  std::span<const std::uint64_t> clause_mask(int clause) const;

  // +1 for ia and ii pairs, -1 for ib pairs, saturating into [1, 2N].
  void apply_feedback(const FeedbackSets& fb);

 private:
  int m_;
  int o_;
  int n_states_;
  int words_per_clause_;
  std::vector<std::int32_t> states_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::int32_t> include_counts_;

  int check_clause(int clause) const;
  int slot(int clause, int literal) const;
  void bump(int clause, int literal, int delta);
};

// Reference clause semantics on an explicit include set; `empty_fires`
// selects the value of the empty conjunction. Used by tests as the slow
// route against TaStateMatrix::evaluate and by inference when the
// empty-clause policy is overridden.
Bit evaluate_clause(std::span<const int> include, const LiteralVector& lits,
                    bool empty_fires = true);

}  // namespace rtm
