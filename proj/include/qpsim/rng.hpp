#pragma once

#include <cstdint>

namespace qpsim {

// xorshift64* (Marsaglia xorshift with a multiplicative finisher). Chosen over
// std::mt19937 etc. because the verify/gen streams must be reproducible from
// the documented algorithm alone, in any language. See README "Random
// numbers" for the normative description; this implementation and that text
// must stay in sync.
class Xorshift64Star {
 public:
  // State must be nonzero; seed 0 is remapped to a fixed odd constant.
  explicit Xorshift64Star(std::uint64_t seed)
      : state_(seed != 0 ? seed : 0x9E3779B97F4A7C15ULL) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  // Uniform-ish draw in [0, bound) via plain modulo. The slight bias for
  // bounds that do not divide 2^64 is accepted; portability of the stream
  // matters more here than perfect uniformity.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace qpsim
