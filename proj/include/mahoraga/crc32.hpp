// CRC-32 (polynomial 0x04C11DB7, reflected, init/xorout 0xFFFFFFFF) plus the
// init-free linear variant used to form per-candidate check deltas in OSD.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace mahoraga::crc {

constexpr std::uint32_t kPoly = 0x04C11DB7;
constexpr std::uint32_t kInit = 0xFFFFFFFF;
constexpr std::uint32_t kXorOut = 0xFFFFFFFF;

// Standard CRC-32 ("123456789" -> 0xCBF43926).
std::uint32_t crc32(std::span<const std::uint8_t> bytes);

// Linear part only (init 0, xorout 0): crc32_linear(a ^ b) =
// crc32_linear(a) ^ crc32_linear(b) for equal-length inputs.
std::uint32_t crc32_linear(std::span<const std::uint8_t> bytes);

// Self-describing parameter string recorded in pool headers.
std::string params_string();

}  // namespace mahoraga::crc
