// Ordered Statistics Decoding over the inner LDPC code.
//
// Positions are ranked by |LLR|; a most-reliable independent basis is found
// by eliminating the generator columns in that order; error patterns up to
// the requested order are re-encoded and screened by an affine payload check
// (CRC-32 in production). Among check-passing candidates the decoder returns
// the one with maximum soft correlation sum((1-2c_i) * llr_i).
//
// Per-candidate work is O(1): the check value and the correlation are both
// affine in the flipped basis rows, so they update by precomputed deltas.

#pragma once

#include <functional>
#include <span>

#include "mahoraga/gf2.hpp"
#include "mahoraga/ldpc.hpp"

namespace mahoraga::osd {

// Affine GF(2) map from codeword to a check word; zero means accept.
// `linear` is the linear part: value(a ^ b) == value(a) ^ linear(b).
struct PayloadCheck {
    int width = 32;
    std::function<std::uint32_t(const gf2::BitVec&)> value;
    std::function<std::uint32_t(const gf2::BitVec&)> linear;
};

// The production check: CRC-32 over the payload bytes against the stored
// check bits, both read from the profile's information columns.
PayloadCheck crc32_check(const ldpc::LdpcProfile& prof);

enum class Status { Passed, Erased };

struct Result {
    Status status = Status::Erased;
    gf2::BitVec payload;        // payload_bits, valid when Passed
    int order_used = 0;         // weight of the winning error pattern
    gf2::BitVec hard_codeword;  // best-correlation candidate regardless of check
};

// Positive LLR means bit 0 is more likely. Orders 0..2 are always enumerated;
// weight-3 patterns only when max_order >= 3 and no lower-order candidate
// passed the check.
Result decode(std::span<const double> llr, const ldpc::LdpcProfile& prof,
              const PayloadCheck& check, int max_order);

}  // namespace mahoraga::osd
