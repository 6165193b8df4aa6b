// End-to-end file encode and decode.
//
// Encode: split into k_rs chunks of u bytes, outer-encode the interleaved
// GF(2^16) codewords (oligo i carries symbol i of every codeword), then per
// oligo: CRC-32 append, LDPC encode, XOR scramble, Gray map, address.
//
// Decode: shortlist -> assign -> adaptive posterior fusion -> LLR -> OSD per
// reference; CRC-passing oligos enter the outer block as received symbols,
// everything else as erasures; Berlekamp-Massey errors-and-erasures per
// codeword; on the low-fidelity profile one turbo pass re-seeds OSD with
// bits pinned from recovered codewords before a final outer attempt.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mahoraga/parallel.hpp"

namespace mahoraga::codec {

enum class Profile { Hifi, Lofi };

std::string profile_name(Profile p);
Profile profile_from_name(std::string_view name);

constexpr int kAddressLen = 14;

struct CodecConfig {
    Profile profile = Profile::Hifi;
    int payload_nt = 126;  // payload bases per strand (B)
    double r = 0.5;        // requested physical redundancy
    double pi = 0.0;       // empirical inner pass rate; <= 0 takes the default
    double safety = 1.08;
    std::uint64_t pool_seed = 1;
    std::optional<double> parity_fraction;  // overrides the pi/safety formula

    double effective_pi() const {
        if (pi > 0.0) return pi;
        return profile == Profile::Hifi ? 0.99 : 0.797;
    }
    int osd_max_order() const { return profile == Profile::Hifi ? 2 : 3; }
    bool turbo_enabled() const { return profile == Profile::Lofi; }
};

struct PoolHeader {
    int version = 1;
    std::uint64_t file_len = 0;  // L
    int n = 0;
    int k_rs = 0;
    Profile profile = Profile::Hifi;
    std::uint64_t pool_seed = 0;
    std::string crc_params;
    std::uint32_t gf_poly = 0;
    int strand_nt = kAddressLen + 126;

    int payload_nt() const { return strand_nt - kAddressLen; }
};

struct Pool {
    PoolHeader header;
    std::vector<std::string> strands;
};

// (k_rs, n). Throws std::length_error when n would exceed the GF(2^16) code
// length and std::invalid_argument on empty input or bad config.
std::pair<int, int> pool_size(std::uint64_t file_len, const CodecConfig& cfg);

Pool encode_file(std::span<const std::uint8_t> bytes, const CodecConfig& cfg,
                 par::Exec exec = par::default_exec());

struct DecodeReport {
    bool success = false;
    std::string md5_hex;
    long received = 0;         // oligos whose inner decode passed CRC
    long erased = 0;           // dropouts plus inner failures (pre-turbo)
    long bm_promoted = 0;      // distinct oligos BM flipped to erasure
    long turbo_recovered = 0;  // oligos recovered by the turbo pass
    std::vector<bool> codeword_success;
    long reads_processed = 0;
};

struct DecodeResult {
    DecodeReport report;
    std::vector<std::uint8_t> bytes;  // empty unless success
};

// Never throws on malformed read data; failure is success=false.
DecodeResult decode_reads(const std::vector<std::string>& reads,
                          const PoolHeader& header,
                          par::Exec exec = par::default_exec());

}  // namespace mahoraga::codec
