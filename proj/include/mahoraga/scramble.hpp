// Per-sequence XOR scrambling keyed by (pool seed, sequence index).
// Involutive by construction; distinct indices get distinct streams.

#pragma once

#include <cstdint>

#include "mahoraga/gf2.hpp"
#include "mahoraga/rng.hpp"

namespace mahoraga::scramble {

inline gf2::BitVec stream(std::uint64_t pool_seed, std::uint64_t index,
                          int n_bits) {
    rng::Stream s(pool_seed, rng::Stage::Scramble, index);
    gf2::BitVec v(n_bits);
    for (auto& word : v.words()) word = s.next_u64();
    int tail = n_bits & 63;
    if (tail) v.words().back() &= (1ULL << tail) - 1;
    return v;
}

inline void apply(gf2::BitVec& codeword, std::uint64_t pool_seed,
                  std::uint64_t index) {
    codeword.xor_with(stream(pool_seed, index, codeword.size()));
}

}  // namespace mahoraga::scramble
