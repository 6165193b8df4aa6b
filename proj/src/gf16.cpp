#include "mahoraga/gf16.hpp"

#include <stdexcept>

namespace mahoraga::gf {

Gf16::Gf16(std::uint32_t primitive_poly)
    : poly_(primitive_poly), alog_(2 * kOrder), log_(65536, -1) {
    if ((primitive_poly >> 16) != 1) {
        throw std::invalid_argument("gf16: polynomial must have degree 16");
    }
    std::uint32_t x = 1;
    for (int i = 0; i < kOrder; ++i) {
        alog_[i] = static_cast<Elem>(x);
        if (log_[x] != -1) {
            throw std::invalid_argument("gf16: polynomial is not primitive");
        }
        log_[x] = i;
        x <<= 1;
        if (x & 0x10000u) x ^= poly_;
    }
    if (x != 1) {
        throw std::invalid_argument("gf16: polynomial is not primitive");
    }
    for (int i = 0; i < kOrder; ++i) alog_[kOrder + i] = alog_[i];
}

const Gf16& Gf16::standard() {
    static const Gf16 field(kDefaultPoly);
    return field;
}

Elem Gf16::inv(Elem a) const {
    if (a == 0) throw std::domain_error("gf16: zero has no inverse");
    return alog_[kOrder - log_[a]];
}

Elem Gf16::mul_slow(Elem a, Elem b, std::uint32_t poly) {
    std::uint32_t acc = 0;
    std::uint32_t aa = a;
    for (int i = 0; i < 16; ++i) {
        if (b & (1u << i)) acc ^= aa << i;
    }
    for (int bit = 31; bit >= 16; --bit) {
        if (acc & (1u << bit)) acc ^= poly << (bit - 16);
    }
    return static_cast<Elem>(acc);
}

}  // namespace mahoraga::gf
