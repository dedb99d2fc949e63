#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "rtm/literals.hpp"
#include "rtm/rng.hpp"
#include "rtm/ta_state.hpp"

using namespace rtm;

namespace {

// Slow-route conjunction, written from the definition: every included
// literal must be 1.
Bit brute_force_conjunction(const std::vector<int>& include,
                            const BitVector& x) {
  const int o = static_cast<int>(x.size());
  for (int k : include) {
    const Bit value = k < o ? x[k] : static_cast<Bit>(1 - x[k - o]);
    if (!value) return 0;
  }
  return 1;
}

BitVector nth_input(int o, int n) {
  BitVector x(o);
  for (int k = 0; k < o; ++k) x[k] = (n >> (o - 1 - k)) & 1;
  return x;
}

}  // namespace

TEST_CASE("augment_literals appends negations") {
  CHECK(augment_literals({1, 0}).bits == BitVector{1, 0, 0, 1});
  CHECK(augment_literals({0, 0, 0}).bits == BitVector{0, 0, 0, 1, 1, 1});
  CHECK(augment_literals({1, 1}).bits == BitVector{1, 1, 0, 0});
}

TEST_CASE("augment_literals rejects non-binary input") {
  CHECK_THROWS_AS(augment_literals({1, 2}), std::invalid_argument);
}

TEST_CASE("pack_literals round-trips bit values") {
  const LiteralVector lv = augment_literals({1, 0, 1, 1});
  const PackedLiterals p = pack_literals(lv);
  REQUIRE(p.n_literals == 8);
  for (int k = 0; k < p.n_literals; ++k) {
    CHECK(((p.words[k / 64] >> (k % 64)) & 1) == lv.bits[k]);
  }
}

TEST_CASE("include_set selects states above N") {
  const int N = 100;
  TaStateMatrix ta(1, 2, N);
  ta.set_state(0, 0, N);
  ta.set_state(0, 1, N + 1);
  ta.set_state(0, 2, N);
  ta.set_state(0, 3, 2 * N);
  CHECK(ta.include_set(0) == std::vector<int>{1, 3});

  TaStateMatrix deep_exclude(1, 2, N);
  for (int k = 0; k < 4; ++k) deep_exclude.set_state(0, k, 1);
  CHECK(deep_exclude.include_set(0).empty());

  TaStateMatrix deep_include(1, 2, N);
  for (int k = 0; k < 4; ++k) deep_include.set_state(0, k, 2 * N);
  CHECK(deep_include.include_set(0) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("include_set rejects out-of-range clause") {
  TaStateMatrix ta(2, 2, 10);
  CHECK_THROWS_AS(ta.include_set(2), std::out_of_range);
  CHECK_THROWS_AS(ta.include_set(-1), std::out_of_range);
}

TEST_CASE("evaluate_clause matches the worked two-variable example") {
  const LiteralVector lits = augment_literals({1, 0});  // [1, 0, 0, 1]
  const std::vector<int> first{0, 3};   // x1 & ~x2
  const std::vector<int> second{1, 2};  // x2 & ~x1
  CHECK(evaluate_clause(first, lits) == 1);
  CHECK(evaluate_clause(second, lits) == 0);
  CHECK(evaluate_clause({}, lits) == 1);
  CHECK(evaluate_clause({}, lits, false) == 0);
}

TEST_CASE("apply_feedback saturates at both ends and crosses the threshold") {
  const int N = 100;
  TaStateMatrix ta(1, 2, N);
  FeedbackSets fb;

  ta.set_state(0, 0, 2 * N);
  fb.ia = {{0, 0}};
  ta.apply_feedback(fb);
  CHECK(ta.state(0, 0) == 2 * N);

  fb.clear();
  ta.set_state(0, 1, 1);
  fb.ib = {{0, 1}};
  ta.apply_feedback(fb);
  CHECK(ta.state(0, 1) == 1);

  fb.clear();
  CHECK_FALSE(ta.includes(0, 2));
  fb.ii = {{0, 2}};
  ta.apply_feedback(fb);
  CHECK(ta.state(0, 2) == N + 1);
  CHECK(ta.includes(0, 2));
}

TEST_CASE("fuzzed feedback keeps every state inside [1, 2N]") {
  const int N = 5;
  const int m = 4;
  const int o = 3;
  TaStateMatrix ta(m, o, N);
  Rng rng(7);
  FeedbackSets fb;
  for (int round = 0; round < 2000; ++round) {
    fb.clear();
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < 2 * o; ++k) {
        const double u = rng.next_unit();
        if (u < 0.25) {
          fb.ia.emplace_back(j, k);
        } else if (u < 0.5) {
          fb.ib.emplace_back(j, k);
        } else if (u < 0.6) {
          fb.ii.emplace_back(j, k);
        }
      }
    }
    ta.apply_feedback(fb);
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < 2 * o; ++k) {
        const int a = ta.state(j, k);
        REQUIRE(a >= 1);
        REQUIRE(a <= 2 * N);
        REQUIRE(ta.includes(j, k) == (a > N));
      }
    }
  }
}

TEST_CASE("clause evaluation equals brute force for every input, o <= 4") {
  Rng rng(11);
  for (int o = 1; o <= 4; ++o) {
    const int N = 10;
    const int m = 6;
    TaStateMatrix ta(m, o, N);
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < 2 * o; ++k) {
        ta.set_state(j, k, 1 + static_cast<int>(rng.below(2 * N)));
      }
    }
    for (int n = 0; n < (1 << o); ++n) {
      const BitVector x = nth_input(o, n);
      const LiteralVector lits = augment_literals(x);
      const PackedLiterals packed = pack_literals(lits);
      for (int j = 0; j < m; ++j) {
        const auto include = ta.include_set(j);
        const Bit expected = brute_force_conjunction(include, x);
        CHECK(ta.evaluate(j, packed) == expected);
        CHECK(evaluate_clause(include, lits) == expected);
      }
    }
  }
}

TEST_CASE("one threshold crossing adds exactly one include index") {
  const int N = 8;
  TaStateMatrix ta(1, 3, N);
  const auto before = ta.include_set(0);
  CHECK(before.empty());
  ta.set_state(0, 4, N + 1);
  const auto after = ta.include_set(0);
  REQUIRE(after.size() == before.size() + 1);
  CHECK(after == std::vector<int>{4});
}

TEST_CASE("random_init places states on the action boundary") {
  Rng rng(3);
  const int N = 50;
  TaStateMatrix ta = TaStateMatrix::random_init(20, 3, N, rng);
  bool saw_include = false;
  bool saw_exclude = false;
  for (int j = 0; j < 20; ++j) {
    for (int k = 0; k < 6; ++k) {
      const int a = ta.state(j, k);
      REQUIRE((a == N || a == N + 1));
      (a == N ? saw_exclude : saw_include) = true;
    }
  }
  CHECK(saw_include);
  CHECK(saw_exclude);
}
