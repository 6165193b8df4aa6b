// Outer Reed-Solomon code over GF(2^16).
//
// Codewords are evaluations of a degree-<k polynomial at the fixed points
// alpha^0 .. alpha^{n-1}; the code is systematic with data at the first k
// points. Erasure decoding is direct interpolation from survivors. The full
// decoder first runs a Berlekamp-Massey error-locator pass over the received
// symbols given the known erasures, promotes located errors to erasures, and
// re-interpolates; any surviving inconsistency fails the codeword rather
// than risking silent corruption.

#pragma once

#include <cstdint>
#include <mutex>
#include <span>
#include <vector>

#include "mahoraga/gf16.hpp"

namespace mahoraga::rs {

class RsCode {
public:
    // Throws std::length_error if n exceeds the field's multiplicative order
    // and std::invalid_argument if k > n.
    RsCode(int n, int k, const gf::Gf16& field = gf::Gf16::standard());

    int n() const { return n_; }
    int k() const { return k_; }

    // Systematic encode: output[0..k) == data, parity by evaluation.
    std::vector<gf::Elem> encode(std::span<const gf::Elem> data) const;

    struct Decoded {
        bool ok = false;
        // Full consistent codeword (only meaningful when ok).
        std::vector<gf::Elem> codeword;
        // Positions BM promoted from unknown error to erasure.
        std::vector<int> promoted;
    };

    // Erasure-only interpolation; received values at non-erased positions are
    // trusted and never modified.
    Decoded decode_erasures(std::span<const gf::Elem> received,
                            std::span<const std::uint8_t> erased) const;

    // Errors-and-erasures: 2e + f <= n - k.
    Decoded decode(std::span<const gf::Elem> received,
                   std::span<const std::uint8_t> erased) const;

private:
    void ensure_decode_tables() const;

    // Interpolate through the k positions listed in `support` and evaluate
    // everywhere; returns empty vector if support values are degenerate.
    std::vector<gf::Elem> interpolate_from(std::span<const int> support,
                                           std::span<const gf::Elem> values) const;

    int n_;
    int k_;
    const gf::Gf16& gf_;
    std::vector<gf::Elem> points_;        // alpha^i
    std::vector<gf::Elem> enc_weights_;   // barycentric weights of points 0..k-1
    mutable std::once_flag decode_once_;
    mutable std::vector<gf::Elem> dual_mult_;  // u_i = 1 / prod_{j!=i}(x_i - x_j)
};

}  // namespace mahoraga::rs
