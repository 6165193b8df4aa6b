// GF(2^16) arithmetic backing the outer Reed-Solomon code.
//
// Elements are 16-bit polynomials over GF(2) reduced modulo a primitive
// polynomial (default x^16 + x^12 + x^3 + x + 1). Multiplication goes through
// log/antilog tables; the antilog table is doubled so products need no
// modular reduction of the exponent sum.

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace mahoraga::gf {

using Elem = std::uint16_t;

class Gf16 {
public:
    static constexpr std::uint32_t kDefaultPoly = 0x1100B;
    static constexpr int kOrder = 65535;  // multiplicative group size

    explicit Gf16(std::uint32_t primitive_poly = kDefaultPoly);

    // Shared instance over the default polynomial.
    static const Gf16& standard();

    std::uint32_t poly() const { return poly_; }

    static Elem add(Elem a, Elem b) { return a ^ b; }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return alog_[log_[a] + log_[b]];
    }

    // Throws std::domain_error on zero input.
    Elem inv(Elem a) const;

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    // alpha^i for i in [0, kOrder); evaluation points of the outer code.
    Elem alpha_pow(int i) const { return alog_[i % kOrder]; }

    int log_of(Elem a) const { return log_[a]; }  // a != 0

    // Carry-less multiply with explicit reduction; the table-free oracle.
    static Elem mul_slow(Elem a, Elem b, std::uint32_t poly);

private:
    std::uint32_t poly_;
    std::vector<Elem> alog_;  // 2 * kOrder entries
    std::vector<int> log_;    // 65536 entries, log_[0] unused
};

}  // namespace mahoraga::gf
