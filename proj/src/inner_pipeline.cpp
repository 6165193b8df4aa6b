#include "mahoraga/inner_pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "mahoraga/dna.hpp"
#include "mahoraga/phmm.hpp"
#include "mahoraga/scramble.hpp"

namespace mahoraga::pipeline {

namespace {

constexpr double kLlrClamp = 30.0;
constexpr double kPinLlr = 100.0;
constexpr int kMaxShift = 6;     // template lengths beyond B +- this give up
constexpr int kOsdCandidates = 6;

struct Candidate {
    int unsat;
    long order;  // enumeration index, the deterministic tie-break
    std::vector<int> map;
};

// map[j] for strand payload position j: source template row, or -1 when the
// position was deleted during synthesis (no evidence). dels are strand
// positions, inss are template positions, both sorted ascending.
std::vector<int> build_map(int payload_nt, int template_len,
                           std::span<const int> dels,
                           std::span<const int> inss) {
    std::vector<int> map(payload_nt, -1);
    std::size_t di = 0, ii = 0;
    int t = 0;
    for (int j = 0; j < payload_nt; ++j) {
        while (ii < inss.size() && t == inss[ii]) {
            ++t;
            ++ii;
        }
        if (di < dels.size() && j == dels[di]) {
            ++di;
            continue;
        }
        if (t >= template_len) return {};  // inconsistent hypothesis
        map[j] = t++;
    }
    while (ii < inss.size() && t == inss[ii]) {
        ++t;
        ++ii;
    }
    if (t != template_len) return {};
    return map;
}

}  // namespace

InnerConfig InnerConfig::from_channel(const ldpc::LdpcProfile& prof,
                                      const osd::PayloadCheck& check,
                                      int max_order,
                                      const idsim::ChannelProfile& channel,
                                      std::uint64_t pool_seed, int payload_nt) {
    InnerConfig cfg;
    cfg.prof = &prof;
    cfg.check = &check;
    cfg.max_order = max_order;
    cfg.synth = channel.synth;
    cfg.seq = channel.seq;
    cfg.pool_seed = pool_seed;
    cfg.payload_nt = payload_nt;
    cfg.two_event_tiers =
        (channel.synth.del + channel.synth.ins) * payload_nt > 0.1;
    return cfg;
}

InnerOutcome decode_reference(int ref_index, const std::string& address,
                              std::span<const std::string> reads,
                              const InnerConfig& cfg) {
    InnerOutcome out;
    const auto& prof = *cfg.prof;
    const int B = cfg.payload_nt;
    if (reads.empty()) return out;

    // Template length: lower median of the read lengths.
    std::vector<int> lens;
    lens.reserve(reads.size());
    for (const auto& r : reads) lens.push_back(static_cast<int>(r.size()));
    std::sort(lens.begin(), lens.end());
    const int addr_len = static_cast<int>(address.size());
    int template_payload = lens[(lens.size() - 1) / 2] - addr_len;
    if (template_payload < 8 || std::abs(template_payload - B) > kMaxShift) {
        return out;
    }

    // Reads are independent given the template, so the model for fusion is
    // the template itself: median length, sequencing rates only.
    phmm::HmmParams seq_prm{
        cfg.seq.sub, cfg.seq.ins, cfg.seq.del,
        phmm::band_halfwidth(addr_len + template_payload, cfg.seq.ins,
                             cfg.seq.del)};
    phmm::ProfileHmm template_model(address, template_payload, seq_prm);
    auto fused = phmm::fuse_adaptive(reads, template_model, 0.999, 4,
                                     par::Exec::Serial);
    out.reads_processed = fused.reads_processed;
    const auto& t_rows = fused.posterior.rows;

    // Template-base posteriors mixed through the synthesis substitution
    // kernel give strand-base posteriors; precompute per-row LLR pairs.
    const double ps = cfg.synth.sub;
    std::vector<std::array<double, 2>> row_llr(template_payload);
    for (int t = 0; t < template_payload; ++t) {
        std::array<double, 4> mixed;
        for (int b = 0; b < 4; ++b) {
            mixed[b] = t_rows[t][b] * (1.0 - ps) +
                       (1.0 - t_rows[t][b]) * (ps / 3.0);
        }
        auto ratio = [](double zero, double one) {
            double v = std::log(std::max(zero, 1e-300)) -
                       std::log(std::max(one, 1e-300));
            return std::clamp(v, -kLlrClamp, kLlrClamp);
        };
        row_llr[t] = {ratio(mixed[0] + mixed[1], mixed[2] + mixed[3]),
                      ratio(mixed[0] + mixed[2], mixed[1] + mixed[3])};
    }

    gf2::BitVec mask = scramble::stream(cfg.pool_seed, ref_index, prof.n_bits);

    auto llr_for = [&](const std::vector<int>& map) {
        std::vector<double> llr(prof.n_bits, 0.0);
        for (int j = 0; j < B; ++j) {
            if (map[j] < 0) continue;  // deleted position: no evidence
            llr[2 * j] = row_llr[map[j]][0];
            llr[2 * j + 1] = row_llr[map[j]][1];
        }
        for (int b = 0; b < prof.n_bits; ++b) {
            if (mask.get(b)) llr[b] = -llr[b];
        }
        return llr;
    };
    auto hard_of = [&](const std::vector<double>& llr) {
        gf2::BitVec c(prof.n_bits);
        for (int b = 0; b < prof.n_bits; ++b) c.set(b, llr[b] < 0.0);
        return c;
    };
    auto unsat_of = [&](const gf2::BitVec& c) {
        int u = 0;
        for (int r = 0; r < prof.m_rows; ++r) u += gf2::dot(prof.h.row(r), c);
        return u;
    };
    auto corr_of = [&](const gf2::BitVec& c, const std::vector<double>& llr) {
        double s = 0.0;
        for (int b = 0; b < prof.n_bits; ++b) {
            s += (c.get(b) ? -1.0 : 1.0) * llr[b];
        }
        return s;
    };

    // Exact winner: hard bits already satisfy every parity check and the
    // payload check. Otherwise the lowest-unsat candidates go through OSD.
    bool have_exact = false;
    double exact_corr = -std::numeric_limits<double>::infinity();
    std::vector<int> exact_map;
    std::vector<Candidate> screened;
    long hyp_counter = 0;

    auto consider = [&](std::span<const int> dels, std::span<const int> inss) {
        auto map = build_map(B, template_payload, dels, inss);
        if (map.empty() && B > 0) return;
        long order = hyp_counter++;
        auto llr = llr_for(map);
        auto hard = hard_of(llr);
        int unsat = unsat_of(hard);
        if (unsat == 0 && cfg.check->value(hard) == 0) {
            double corr = corr_of(hard, llr);
            if (!have_exact || corr > exact_corr) {
                have_exact = true;
                exact_corr = corr;
                exact_map = std::move(map);
            }
            return;
        }
        Candidate cand{unsat, order, std::move(map)};
        auto pos = std::upper_bound(
            screened.begin(), screened.end(), cand,
            [](const Candidate& a, const Candidate& b) {
                return a.unsat != b.unsat ? a.unsat < b.unsat
                                          : a.order < b.order;
            });
        screened.insert(pos, std::move(cand));
        if (static_cast<int>(screened.size()) > kOsdCandidates) {
            screened.pop_back();
        }
    };

    auto run_tier = [&](int tier) {
        const int shift = template_payload - B;
        if (tier == 1) {
            if (shift == 0) {
                consider({}, {});
            } else if (shift == -1) {
                for (int d = 0; d < B; ++d) consider(std::array{d}, {});
            } else if (shift == 1) {
                for (int e = 0; e < template_payload; ++e) {
                    consider({}, std::array{e});
                }
            } else if (shift == -2) {
                for (int d1 = 0; d1 < B; ++d1) {
                    for (int d2 = d1 + 1; d2 < B; ++d2) {
                        consider(std::array{d1, d2}, {});
                    }
                }
            } else if (shift == 2) {
                for (int e1 = 0; e1 < template_payload; ++e1) {
                    for (int e2 = e1 + 1; e2 < template_payload; ++e2) {
                        consider({}, std::array{e1, e2});
                    }
                }
            }
        } else if (tier == 2 && shift == 0 && cfg.two_event_tiers) {
            for (int d = 0; d < B; ++d) {
                for (int e = 0; e < template_payload; ++e) {
                    consider(std::array{d}, std::array{e});
                }
            }
        }
    };

    auto finish_osd = [&]() -> bool {
        // Candidates are ordered by parity violations; the first passer wins.
        // The expensive top order only runs for the two best-screened
        // hypotheses, lower ranks settle for order 2.
        int rank = 0;
        for (const auto& cand : screened) {
            int order = rank < 2 ? cfg.max_order : std::min(cfg.max_order, 2);
            ++rank;
            auto llr = llr_for(cand.map);
            auto res = osd::decode(llr, prof, *cfg.check, order);
            if (res.status == osd::Status::Passed) {
                out.result = std::move(res);
                out.llr = std::move(llr);
                return true;
            }
        }
        return false;
    };

    for (int tier = 1; tier <= 2; ++tier) {
        long before = hyp_counter;
        run_tier(tier);
        if (hyp_counter == before && tier > 1) break;  // nothing new to try
        if (have_exact) {
            auto llr = llr_for(exact_map);
            auto hard = hard_of(llr);
            out.llr = std::move(llr);
            out.result.status = osd::Status::Passed;
            out.result.order_used = 0;
            out.result.hard_codeword = hard;
            gf2::BitVec payload(prof.payload_bits);
            for (int t = 0; t < prof.payload_bits; ++t) {
                payload.set(t, hard.get(prof.info_cols[t]));
            }
            out.result.payload = std::move(payload);
            return out;
        }
        if (finish_osd()) return out;
    }

    // Nothing passed: keep the best-screened hypothesis for the turbo pass.
    if (!screened.empty()) {
        out.llr = llr_for(screened.front().map);
        out.result.hard_codeword = hard_of(out.llr);
    }
    return out;
}

osd::Result redecode_pinned(std::span<const double> stored_llr,
                            std::span<const std::pair<int, bool>> pins,
                            const InnerConfig& cfg) {
    std::vector<double> llr(stored_llr.begin(), stored_llr.end());
    for (const auto& [col, bit] : pins) {
        llr[col] = bit ? -kPinLlr : kPinLlr;
    }
    return osd::decode(llr, *cfg.prof, *cfg.check, cfg.max_order);
}

}  // namespace mahoraga::pipeline
