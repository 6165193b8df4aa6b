#include "mahoraga/dna.hpp"

#include <bit>
#include <stdexcept>

#include "mahoraga/rng.hpp"

namespace mahoraga::dna {

std::string bits_to_bases(const gf2::BitVec& bits) {
    if (bits.size() % 2 != 0) {
        throw std::invalid_argument("dna: bit string length must be even");
    }
    std::string out(bits.size() / 2, 'A');
    for (int t = 0; t < bits.size() / 2; ++t) {
        int v = (bits.get(2 * t) << 1) | static_cast<int>(bits.get(2 * t + 1));
        out[t] = base_char(v);
    }
    return out;
}

gf2::BitVec bases_to_bits(std::string_view bases) {
    gf2::BitVec bits(2 * static_cast<int>(bases.size()));
    for (std::size_t t = 0; t < bases.size(); ++t) {
        int v = base_code(bases[t]);
        if (v < 0) throw std::invalid_argument("dna: non-ACGT base");
        bits.set(2 * t, (v >> 1) & 1);
        bits.set(2 * t + 1, v & 1);
    }
    return bits;
}

namespace {

constexpr std::uint32_t kPairMask = 0x05555555;  // low bit of each of 14 pairs

int packed_distance(std::uint32_t a, std::uint32_t b) {
    std::uint32_t x = a ^ b;
    return std::popcount((x | (x >> 1)) & kPairMask);
}

}  // namespace

std::vector<std::string> make_addresses(std::uint64_t pool_seed, int n) {
    std::vector<std::uint32_t> packed;
    packed.reserve(n);
    std::vector<std::string> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        for (std::uint64_t attempt = 0;; ++attempt) {
            if (attempt > 100000) {
                throw std::runtime_error("dna: address space exhausted");
            }
            rng::Stream s(pool_seed, rng::Stage::Address, static_cast<std::uint64_t>(i),
                          attempt);
            std::uint32_t p = 0;
            std::string addr(kAddressLen, 'A');
            for (int t = 0; t < kAddressLen; ++t) {
                std::uint32_t v = s.next_below(4);
                p |= v << (2 * t);
                addr[t] = base_char(static_cast<int>(v));
            }
            bool ok = true;
            for (std::uint32_t q : packed) {
                if (packed_distance(p, q) < 4) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                packed.push_back(p);
                out.push_back(std::move(addr));
                break;
            }
        }
    }
    return out;
}

std::string flank_pad(std::uint64_t pool_seed) {
    rng::Stream s(pool_seed, rng::Stage::Flank);
    std::string pad(kFlankLen, 'A');
    for (int t = 0; t < kFlankLen; ++t) {
        pad[t] = base_char(static_cast<int>(s.next_below(4)));
    }
    return pad;
}

std::string assemble_strand(const std::string& address,
                            const gf2::BitVec& codeword_bits) {
    return address + bits_to_bases(codeword_bits);
}

gf2::BitVec disassemble_strand(std::string_view strand, int payload_nt) {
    if (static_cast<int>(strand.size()) != kAddressLen + payload_nt) {
        throw std::invalid_argument("dna: strand length mismatch");
    }
    return bases_to_bits(strand.substr(kAddressLen));
}

}  // namespace mahoraga::dna
