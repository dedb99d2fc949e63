#include "rtm/literals.hpp"

#include <stdexcept>
#include <string>

namespace rtm {

LiteralVector augment_literals(const BitVector& x) {
  LiteralVector lv;
  lv.bits.resize(2 * x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] > 1) {
      throw std::invalid_argument("augment_literals: element " +
                                  std::to_string(k) + " is not 0 or 1");
    }
    lv.bits[k] = x[k];
    lv.bits[x.size() + k] = static_cast<Bit>(1 - x[k]);
  }
  return lv;
}

PackedLiterals pack_literals(const LiteralVector& lv) {
  PackedLiterals p;
  p.n_literals = lv.n_literals();
  p.words.assign((p.n_literals + 63) / 64, 0);
  for (int k = 0; k < p.n_literals; ++k) {
    if (lv.bits[k]) p.words[k / 64] |= std::uint64_t{1} << (k % 64);
  }
  return p;
}

PackedLiterals pack_input(const BitVector& x) {
  return pack_literals(augment_literals(x));
}

}  // namespace rtm
