// Counter-based deterministic random streams.
//
// Every randomized stage of the pipeline draws from a stream keyed by
// (seed, stage, item index), so parallel loops produce identical output
// regardless of thread count or iteration order.

#pragma once

#include <cmath>
#include <cstdint>

namespace mahoraga::rng {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

enum class Stage : std::uint64_t {
    Address = 1,
    Flank = 2,
    Scramble = 3,
    SynthTemplate = 4,
    CopyWeight = 5,
    CopyCount = 6,
    Read = 7,
    InputFile = 8,
};

class Stream {
public:
    Stream(std::uint64_t seed, Stage stage, std::uint64_t index = 0,
           std::uint64_t subindex = 0)
        : key_(mix64(mix64(mix64(seed ^ 0x6d61686f72616761ULL) +
                           static_cast<std::uint64_t>(stage)) +
                     mix64(index + 0x9e3779b97f4a7c15ULL * subindex))) {}

    std::uint64_t next_u64() { return mix64(key_ ^ mix64(++counter_)); }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound) by rejection-free scaling; bound is tiny
    // everywhere we use this, so modulo bias is far below statistical noise.
    std::uint32_t next_below(std::uint32_t bound) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    double next_normal() {
        // Box-Muller; first uniform shifted away from zero.
        double u1 = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925287 * u2);
    }

    // Knuth's product method; our rates keep lambda well under 200.
    long next_poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        double log_l = -lambda;
        long k = 0;
        double log_p = 0.0;
        for (;;) {
            log_p += std::log((static_cast<double>(next_u64() >> 11) + 0.5) *
                              0x1.0p-53);
            if (log_p < log_l) return k;
            ++k;
        }
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace mahoraga::rng
