// Per-reference inner decode: template-level posterior fusion followed by a
// synthesis-indel hypothesis search.
//
// Reads of one reference are independent given its synthesized template, so
// log-product fusion is run against a payload-agnostic model of the template
// (median read length, sequencing rates). Persistent synthesis indels shift
// the template relative to the 2-bits-per-base codeword layout, and with
// uniform payload emissions their positions cannot be localized by alignment
// alone; instead, candidate indel placements are enumerated, each mapped to
// a codeword-domain LLR vector, screened by the LDPC parity checks, and the
// survivors handed to OSD with the CRC as the final arbiter. Persistent
// substitutions are left to OSD's error-pattern enumeration.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mahoraga/idsim.hpp"
#include "mahoraga/ldpc.hpp"
#include "mahoraga/osd.hpp"

namespace mahoraga::pipeline {

struct InnerConfig {
    const ldpc::LdpcProfile* prof = nullptr;
    const osd::PayloadCheck* check = nullptr;
    int max_order = 2;
    idsim::ErrorRates synth;  // persistent stage
    idsim::ErrorRates seq;    // independent per-read stage
    std::uint64_t pool_seed = 0;
    int payload_nt = 126;
    // Enumerate two-event hypothesis tiers (worth it only when the synthesis
    // indel rate is substantial).
    bool two_event_tiers = false;

    static InnerConfig from_channel(const ldpc::LdpcProfile& prof,
                                    const osd::PayloadCheck& check,
                                    int max_order,
                                    const idsim::ChannelProfile& channel,
                                    std::uint64_t pool_seed, int payload_nt);
};

struct InnerOutcome {
    osd::Result result;       // Erased unless a hypothesis passed the check
    std::vector<double> llr;  // codeword-domain LLRs of the winning (or
                              // best-screened) hypothesis; kept for turbo
    int reads_processed = 0;
};

// reads must be sorted by content so results depend only on the multiset.
InnerOutcome decode_reference(int ref_index, const std::string& address,
                              std::span<const std::string> reads,
                              const InnerConfig& cfg);

// Re-decode with pinned codeword bits (turbo): pinned positions get sentinel
// LLRs on top of the stored vector.
osd::Result redecode_pinned(std::span<const double> stored_llr,
                            std::span<const std::pair<int, bool>> pins,
                            const InnerConfig& cfg);

}  // namespace mahoraga::pipeline
