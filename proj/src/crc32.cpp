#include "mahoraga/crc32.hpp"

#include <array>

namespace mahoraga::crc {

namespace {

// Reflected-table for the reflected algorithm.
std::array<std::uint32_t, 256> make_table() {
    std::array<std::uint32_t, 256> table{};
    constexpr std::uint32_t reflected_poly = 0xEDB88320;  // bit-reverse of kPoly
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int k = 0; k < 8; ++k) {
            c = (c & 1) ? (reflected_poly ^ (c >> 1)) : (c >> 1);
        }
        table[i] = c;
    }
    return table;
}

const std::array<std::uint32_t, 256>& table() {
    static const auto t = make_table();
    return t;
}

std::uint32_t run(std::span<const std::uint8_t> bytes, std::uint32_t init,
                  std::uint32_t xorout) {
    const auto& t = table();
    std::uint32_t c = init;
    for (std::uint8_t b : bytes) {
        c = t[(c ^ b) & 0xFF] ^ (c >> 8);
    }
    return c ^ xorout;
}

}  // namespace

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
    return run(bytes, kInit, kXorOut);
}

std::uint32_t crc32_linear(std::span<const std::uint8_t> bytes) {
    return run(bytes, 0, 0);
}

std::string params_string() {
    return "crc32/poly=0x04C11DB7,init=0xFFFFFFFF,xorout=0xFFFFFFFF,"
           "reflect=true";
}

}  // namespace mahoraga::crc
