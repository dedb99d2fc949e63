#pragma once

#include <cstdint>
#include <vector>

namespace rtm {

using Bit = std::uint8_t;
using BitVector = std::vector<Bit>;

// Input bits augmented with their negations: [x_1..x_o, ~x_1..~x_o].
// Literal index k < o refers to x_{k+1}, k >= o to its negation.
struct LiteralVector {
  BitVector bits;

  int n_inputs() const { return static_cast<int>(bits.size() / 2); }
  int n_literals() const { return static_cast<int>(bits.size()); }
};

// Throws std::invalid_argument if any element of x is not 0 or 1.
LiteralVector augment_literals(const BitVector& x);

// Literals packed little-endian into 64-bit words; a clause with include
// mask M fires iff (M & words) == M in every word.
struct PackedLiterals {
  std::vector<std::uint64_t> words;
  int n_literals = 0;
};

PackedLiterals pack_literals(const LiteralVector& lv);
PackedLiterals pack_input(const BitVector& x);

}  // namespace rtm
