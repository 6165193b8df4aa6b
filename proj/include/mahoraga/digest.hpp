// MD5 hex digest (OpenSSL EVP).

#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace mahoraga::digest {

std::string md5_hex(std::span<const std::uint8_t> bytes);

}  // namespace mahoraga::digest
