#include "mahoraga/digest.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace mahoraga::digest {

std::string md5_hex(std::span<const std::uint8_t> bytes) {
    unsigned char out[EVP_MAX_MD_SIZE];
    unsigned int out_len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), out, &out_len, EVP_md5(),
                   nullptr) != 1) {
        throw std::runtime_error("digest: EVP_Digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string s;
    s.reserve(2 * out_len);
    for (unsigned int i = 0; i < out_len; ++i) {
        s.push_back(hex[out[i] >> 4]);
        s.push_back(hex[out[i] & 0xF]);
    }
    return s;
}

}  // namespace mahoraga::digest
