#include "mahoraga/codec.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "mahoraga/assign.hpp"
#include "mahoraga/crc32.hpp"
#include "mahoraga/digest.hpp"
#include "mahoraga/dna.hpp"
#include "mahoraga/gf16.hpp"
#include "mahoraga/idsim.hpp"
#include "mahoraga/inner_pipeline.hpp"
#include "mahoraga/ldpc.hpp"
#include "mahoraga/osd.hpp"
#include "mahoraga/phmm.hpp"
#include "mahoraga/rs.hpp"
#include "mahoraga/scramble.hpp"

namespace mahoraga::codec {

namespace {

constexpr double kTurboPinLlr = 100.0;  // above the +-30 clamp
constexpr int kTurboMaxDisagree = 5;

const ldpc::LdpcProfile& inner_profile(Profile p, int payload_nt) {
    if (payload_nt == 126) {
        return p == Profile::Lofi ? ldpc::lofi_profile() : ldpc::hifi_profile();
    }
    // Scaled strand lengths are constructed on demand and cached per length.
    static std::vector<std::pair<std::pair<int, bool>, ldpc::LdpcProfile>> cache;
    static std::mutex mu;
    std::scoped_lock lock(mu);
    std::pair<int, bool> key{payload_nt, p == Profile::Lofi};
    for (auto& [k, prof] : cache) {
        if (k == key) return prof;
    }
    cache.emplace_back(key,
                       ldpc::scaled_profile(payload_nt, p == Profile::Lofi));
    return cache.back().second;
}

// Payload bytes -> information bits: payload, CRC-32 (MSB first), zero pad.
gf2::BitVec build_info(std::span<const std::uint8_t> payload_bytes,
                       const ldpc::LdpcProfile& prof) {
    gf2::BitVec info(prof.k_info);
    for (int t = 0; t < prof.payload_bits; ++t) {
        if (payload_bytes[t >> 3] & (0x80u >> (t & 7))) info.set(t, true);
    }
    std::uint32_t crc = crc::crc32(payload_bytes);
    for (int b = 0; b < 32; ++b) {
        if (crc & (0x80000000u >> b)) info.set(prof.payload_bits + b, true);
    }
    return info;
}

std::vector<std::uint8_t> payload_to_bytes(const gf2::BitVec& payload) {
    std::vector<std::uint8_t> bytes(payload.size() / 8, 0);
    for (int t = 0; t < payload.size(); ++t) {
        if (payload.get(t)) bytes[t >> 3] |= 0x80u >> (t & 7);
    }
    return bytes;
}

}  // namespace

std::string profile_name(Profile p) {
    return p == Profile::Hifi ? "hifi" : "lofi";
}

Profile profile_from_name(std::string_view name) {
    if (name == "hifi") return Profile::Hifi;
    if (name == "lofi") return Profile::Lofi;
    throw std::invalid_argument("codec: unknown profile name");
}

std::pair<int, int> pool_size(std::uint64_t file_len, const CodecConfig& cfg) {
    if (file_len == 0) throw std::invalid_argument("codec: empty input");
    if (cfg.r <= 0.0 || cfg.safety < 1.0 || cfg.effective_pi() > 1.0) {
        throw std::invalid_argument("codec: bad sizing parameters");
    }
    const auto& prof = inner_profile(cfg.profile, cfg.payload_nt);
    const int u = prof.payload_bits / 8;
    const auto k_rs = static_cast<long>((file_len + u - 1) / u);
    long n;
    if (cfg.parity_fraction) {
        double frac = *cfg.parity_fraction;
        if (frac < 0.0 || frac >= 1.0) {
            throw std::invalid_argument("codec: parity fraction out of range");
        }
        n = static_cast<long>(std::ceil(static_cast<double>(k_rs) / (1.0 - frac)));
    } else {
        double survive = 1.0 - std::exp(-cfg.r);
        n = static_cast<long>(std::ceil(
            cfg.safety * static_cast<double>(k_rs) /
            (survive * cfg.effective_pi())));
        if (n < k_rs + 4) n = k_rs + 4;  // minimum-parity floor
    }
    if (n > gf::Gf16::kOrder) {
        throw std::length_error("codec: pool exceeds GF(2^16) code length");
    }
    return {static_cast<int>(k_rs), static_cast<int>(n)};
}

Pool encode_file(std::span<const std::uint8_t> bytes, const CodecConfig& cfg,
                 par::Exec exec) {
    const auto& prof = inner_profile(cfg.profile, cfg.payload_nt);
    const int u = prof.payload_bits / 8;
    const int num_cw = u / 2;
    auto [k_rs, n] = pool_size(bytes.size(), cfg);

    // Chunk grid: n rows of u bytes; data rows first, parity rows filled from
    // the interleaved outer codewords.
    std::vector<std::uint8_t> grid(static_cast<std::size_t>(n) * u, 0);
    std::copy(bytes.begin(), bytes.end(), grid.begin());

    rs::RsCode outer(n, k_rs);
    par::for_index(
        static_cast<std::size_t>(num_cw),
        [&](std::size_t j) {
            std::vector<gf::Elem> data(k_rs);
            for (int i = 0; i < k_rs; ++i) {
                const std::uint8_t* row = &grid[static_cast<std::size_t>(i) * u];
                data[i] = static_cast<gf::Elem>((row[2 * j] << 8) | row[2 * j + 1]);
            }
            auto cw = outer.encode(data);
            for (int i = k_rs; i < n; ++i) {
                std::uint8_t* row = &grid[static_cast<std::size_t>(i) * u];
                row[2 * j] = static_cast<std::uint8_t>(cw[i] >> 8);
                row[2 * j + 1] = static_cast<std::uint8_t>(cw[i] & 0xFF);
            }
        },
        exec);

    auto addresses = dna::make_addresses(cfg.pool_seed, n);

    Pool pool;
    pool.strands.resize(n);
    par::for_index(
        static_cast<std::size_t>(n),
        [&](std::size_t i) {
            std::span<const std::uint8_t> chunk{&grid[i * u],
                                                static_cast<std::size_t>(u)};
            gf2::BitVec cw = prof.encode(build_info(chunk, prof));
            scramble::apply(cw, cfg.pool_seed, i);
            pool.strands[i] = dna::assemble_strand(addresses[i], cw);
        },
        exec);

    pool.header.file_len = bytes.size();
    pool.header.n = n;
    pool.header.k_rs = k_rs;
    pool.header.profile = cfg.profile;
    pool.header.pool_seed = cfg.pool_seed;
    pool.header.crc_params = crc::params_string();
    pool.header.gf_poly = gf::Gf16::standard().poly();
    pool.header.strand_nt = kAddressLen + cfg.payload_nt;
    return pool;
}

DecodeResult decode_reads(const std::vector<std::string>& reads,
                          const PoolHeader& header, par::Exec exec) {
    DecodeResult out;
    try {
        const auto& prof = inner_profile(header.profile, header.payload_nt());
        const int u = prof.payload_bits / 8;
        const int num_cw = u / 2;
        const int n = header.n;
        const int k_rs = header.k_rs;
        const bool lofi = header.profile == Profile::Lofi;
        const int max_order = lofi ? 3 : 2;

        const auto& channel = idsim::ChannelProfile::by_name(
            profile_name(header.profile));
        // Assignment scores reads against full-length strand models under
        // the combined synthesis-plus-sequencing rates.
        auto rates = channel.combined();
        const int ref_len = header.strand_nt;
        phmm::HmmParams prm{rates.sub, rates.ins, rates.del,
                            phmm::band_halfwidth(ref_len, rates.ins, rates.del)};

        auto addresses = dna::make_addresses(header.pool_seed, n);
        std::string flank = dna::flank_pad(header.pool_seed);

        std::vector<phmm::ProfileHmm> hmms;
        hmms.reserve(n);
        std::vector<std::string> kmer_sources;
        kmer_sources.reserve(n);
        for (int i = 0; i < n; ++i) {
            hmms.emplace_back(addresses[i], header.payload_nt(), prm);
            kmer_sources.push_back(addresses[i] + flank);
        }
        auto index = assign::KmerIndex::build(kmer_sources);

        // Read-to-reference assignment.
        std::vector<int> assigned(reads.size(), -1);
        par::for_index(
            reads.size(),
            [&](std::size_t j) {
                try {
                    auto cand = assign::shortlist(reads[j], index);
                    assigned[j] = assign::assign_read(reads[j], cand, hmms).ref;
                } catch (...) {
                    assigned[j] = -1;
                }
            },
            exec);

        std::vector<std::vector<int>> by_ref(n);
        for (std::size_t j = 0; j < reads.size(); ++j) {
            if (assigned[j] >= 0) by_ref[assigned[j]].push_back(static_cast<int>(j));
        }
        // Batch order must be a function of the read multiset, not file order.
        for (auto& list : by_ref) {
            std::sort(list.begin(), list.end(), [&](int a, int b) {
                return reads[a] < reads[b];
            });
        }

        const osd::PayloadCheck check = osd::crc32_check(prof);
        const pipeline::InnerConfig inner_cfg = pipeline::InnerConfig::from_channel(
            prof, check, max_order, channel, header.pool_seed,
            header.payload_nt());
        std::vector<pipeline::InnerOutcome> inner(n);
        par::for_index(
            static_cast<std::size_t>(n),
            [&](std::size_t i) {
                if (by_ref[i].empty()) return;  // dropout
                try {
                    std::vector<std::string> ref_reads;
                    ref_reads.reserve(by_ref[i].size());
                    for (int j : by_ref[i]) ref_reads.push_back(reads[j]);
                    inner[i] = pipeline::decode_reference(
                        static_cast<int>(i), addresses[i], ref_reads, inner_cfg);
                } catch (...) {
                    inner[i] = {};
                }
            },
            exec);

        // Outer block: symbol grid plus per-oligo erasure flags.
        std::vector<std::uint8_t> erased(n, 1);
        std::vector<std::vector<gf::Elem>> symbols(
            num_cw, std::vector<gf::Elem>(n, 0));
        auto admit_oligo = [&](int i, const gf2::BitVec& payload) {
            auto bytes = payload_to_bytes(payload);
            for (int j = 0; j < num_cw; ++j) {
                symbols[j][i] = static_cast<gf::Elem>((bytes[2 * j] << 8) |
                                                      bytes[2 * j + 1]);
            }
            erased[i] = 0;
        };
        long received = 0;
        for (int i = 0; i < n; ++i) {
            if (inner[i].result.status == osd::Status::Passed) {
                admit_oligo(i, inner[i].result.payload);
                ++received;
            }
        }

        rs::RsCode outer(n, k_rs);
        std::vector<rs::RsCode::Decoded> decoded(num_cw);
        auto run_outer = [&](bool only_failed) {
            par::for_index(
                static_cast<std::size_t>(num_cw),
                [&](std::size_t j) {
                    if (only_failed && decoded[j].ok) return;
                    decoded[j] = outer.decode(symbols[j], erased);
                },
                exec);
        };
        run_outer(false);

        auto any_ok = [&] {
            return std::any_of(decoded.begin(), decoded.end(),
                               [](const auto& d) { return d.ok; });
        };
        auto all_ok = [&] {
            return std::all_of(decoded.begin(), decoded.end(),
                               [](const auto& d) { return d.ok; });
        };

        // Single optional turbo iteration on the low-fidelity profile.
        long turbo_recovered = 0;
        if (lofi && !all_ok() && any_ok()) {
            std::vector<std::uint8_t> promoted(n, 0);
            std::vector<gf2::BitVec> new_payload(n);
            par::for_index(
                static_cast<std::size_t>(n),
                [&](std::size_t i) {
                    const auto& st = inner[i];
                    if (st.llr.empty() ||
                        st.result.status == osd::Status::Passed) {
                        return;
                    }
                    try {
                        std::vector<std::pair<int, bool>> pins;
                        int disagree = 0;
                        for (int j = 0; j < num_cw; ++j) {
                            if (!decoded[j].ok) continue;
                            gf::Elem sym = decoded[j].codeword[i];
                            for (int b = 0; b < 16; ++b) {
                                bool bit = (sym >> (15 - b)) & 1;
                                int col = prof.info_cols[16 * j + b];
                                if (st.result.hard_codeword.get(col) != bit) {
                                    ++disagree;
                                }
                                pins.emplace_back(col, bit);
                            }
                        }
                        if (disagree > kTurboMaxDisagree) return;
                        auto redo =
                            pipeline::redecode_pinned(st.llr, pins, inner_cfg);
                        if (redo.status == osd::Status::Passed) {
                            promoted[i] = 1;
                            new_payload[i] = std::move(redo.payload);
                        }
                    } catch (...) {
                    }
                },
                exec);
            for (int i = 0; i < n; ++i) {
                if (promoted[i]) {
                    admit_oligo(i, new_payload[i]);
                    ++turbo_recovered;
                }
            }
            if (turbo_recovered > 0) run_outer(true);
        }

        std::vector<std::uint8_t> bm_oligo(n, 0);
        for (const auto& d : decoded) {
            for (int i : d.promoted) bm_oligo[i] = 1;
        }

        DecodeReport& rep = out.report;
        rep.received = received;
        rep.erased = n - received;
        rep.turbo_recovered = turbo_recovered;
        rep.bm_promoted =
            std::count(bm_oligo.begin(), bm_oligo.end(), std::uint8_t{1});
        for (const auto& st : inner) rep.reads_processed += st.reads_processed;
        rep.codeword_success.resize(num_cw);
        for (int j = 0; j < num_cw; ++j) rep.codeword_success[j] = decoded[j].ok;
        rep.success = all_ok();

        if (rep.success) {
            std::vector<std::uint8_t> bytes;
            bytes.reserve(static_cast<std::size_t>(k_rs) * u);
            for (int i = 0; i < k_rs; ++i) {
                for (int j = 0; j < num_cw; ++j) {
                    gf::Elem sym = decoded[j].codeword[i];
                    bytes.push_back(static_cast<std::uint8_t>(sym >> 8));
                    bytes.push_back(static_cast<std::uint8_t>(sym & 0xFF));
                }
            }
            bytes.resize(header.file_len);
            rep.md5_hex = digest::md5_hex(bytes);
            out.bytes = std::move(bytes);
        }
        return out;
    } catch (...) {
        out = {};
        return out;
    }
}

}  // namespace mahoraga::codec
