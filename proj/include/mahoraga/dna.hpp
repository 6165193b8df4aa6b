// Bit/base mapping, address generation, and strand assembly.
//
// Base pairs follow the Gray-coded table 00->A, 01->C, 11->G, 10->T, so
// adjacent table entries differ in one bit and a single substitution flips
// at most two payload bits (one for two of the three substitution targets).

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mahoraga/gf2.hpp"

namespace mahoraga::dna {

constexpr int kAddressLen = 14;
constexpr int kFlankLen = 8;

// Pair value: first bit is the high bit. 0->A, 1->C, 2->T, 3->G.
inline char base_char(int v) {
    constexpr char table[4] = {'A', 'C', 'T', 'G'};
    return table[v & 3];
}

// Returns -1 for non-ACGT characters.
inline int base_code(char c) {
    switch (c) {
        case 'A': return 0;
        case 'C': return 1;
        case 'T': return 2;
        case 'G': return 3;
        default: return -1;
    }
}

// Even-length bit string -> bases, two bits per base. Throws on odd length.
std::string bits_to_bases(const gf2::BitVec& bits);
gf2::BitVec bases_to_bits(std::string_view bases);

// Deterministic 14-nt addresses with pairwise base-Hamming distance >= 4
// within the pool; colliding draws are re-drawn with a bumped attempt key.
std::vector<std::string> make_addresses(std::uint64_t pool_seed, int n);

// Pool-wide fixed padding appended to the address region when harvesting
// index k-mers; payload bases are unknown at decode time.
std::string flank_pad(std::uint64_t pool_seed);

std::string assemble_strand(const std::string& address,
                            const gf2::BitVec& codeword_bits);

// Inverse of assemble_strand for a clean strand. Throws on length mismatch
// or non-ACGT payload characters.
gf2::BitVec disassemble_strand(std::string_view strand, int payload_nt);

}  // namespace mahoraga::dna
