// Inner LDPC code: progressive-edge-growth construction and systematic
// encoding.
//
// The canonical per-oligo code is 252 bits with variable degree 3; the check
// degree is 84 on the high-fidelity profile (9 rows, 243 info bits) and 21 on
// the low-fidelity profile (36 rows, 216 info bits). Information bits are the
// free columns of the reduced parity-check matrix; if H is rank-deficient the
// surplus free columns are pinned to zero so the encoder stays a bijection
// onto the transmitted codebook.

#pragma once

#include <cstdint>
#include <vector>

#include "mahoraga/gf2.hpp"

namespace mahoraga::ldpc {

struct LdpcProfile {
    int n_bits = 0;
    int dv = 0;
    int dc = 0;      // check-degree cap
    int m_rows = 0;  // parity rows
    int k_info = 0;  // n_bits - m_rows
    int payload_bits = 0;  // largest multiple of 16 <= k_info - 32
    int measured_rank = 0;
    std::uint64_t seed = 0;

    gf2::BitMatrix h;            // m_rows x n_bits
    std::vector<int> info_cols;  // k_info columns carrying information bits
    std::vector<int> pinned_cols;  // surplus free columns, forced to zero

    // Parity assignments from the reduced form of H: each rule computes one
    // pivot column as the XOR of free columns.
    struct ParityRule {
        int pivot_col;
        gf2::BitVec depends;  // over codeword columns
    };
    std::vector<ParityRule> rules;

    // Rows of the systematic generator: encode(unit info vector t).
    std::vector<gf2::BitVec> gen_rows;

    gf2::BitVec encode(const gf2::BitVec& info) const;
    bool parity_ok(const gf2::BitVec& codeword) const;
    gf2::BitVec extract_info(const gf2::BitVec& codeword) const;
};

// Deterministic PEG: each new edge attaches to the check node deepest in the
// BFS tree of the current graph (unreached first), ties broken by lowest
// current degree then lowest index. Throws if n_bits * dv > m_rows * dc.
LdpcProfile peg_construct(int n_bits, int dv, int dc, int m_rows,
                          std::uint64_t seed);

// Profile around an explicit parity-check matrix. payload_bits defaults to
// the largest multiple of 16 that fits after a 32-bit CRC; small test codes
// can override it.
LdpcProfile profile_from_matrix(gf2::BitMatrix h, int payload_bits = -1);

// Canonical profiles (cached).
const LdpcProfile& hifi_profile();
const LdpcProfile& lofi_profile();

// Profile for a scaled payload length: 2 bits per payload base, dv = 3, the
// canonical check-degree cap, and m = ceil(n_bits * dv / dc).
LdpcProfile scaled_profile(int payload_bases, bool lofi);

}  // namespace mahoraga::ldpc
