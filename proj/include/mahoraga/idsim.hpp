// Three-stage insertion/deletion/substitution channel simulator.
//
// Stage one corrupts each reference once with synthesis rates, producing a
// persistent template inherited by every copy. Stage two draws a lognormal
// weight and a Poisson copy count per template and drops zero-copy templates.
// Stage three samples reads from surviving molecules at the requested depth
// and corrupts each read independently with sequencing rates.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mahoraga/parallel.hpp"
#include "mahoraga/rng.hpp"

namespace mahoraga::idsim {

struct ErrorRates {
    double sub = 0.0;
    double del = 0.0;
    double ins = 0.0;
};

struct ChannelProfile {
    std::string name;
    ErrorRates synth;
    ErrorRates seq;
    double sigma = 0.3;  // lognormal coverage sigma (mu = 0)

    static const ChannelProfile& hifi();
    static const ChannelProfile& lofi();
    static const ChannelProfile& by_name(std::string_view name);

    // Synthesis + sequencing rates; what the decoder-side HMM assumes.
    ErrorRates combined() const {
        return {synth.sub + seq.sub, synth.del + seq.del, synth.ins + seq.ins};
    }
};

// Per input base: delete w.p. del, else substitute w.p. sub (uniform over the
// other three bases); a uniform base is inserted before each position and at
// the end w.p. ins.
std::string corrupt(std::string_view seq, const ErrorRates& rates,
                    rng::Stream& stream);

std::vector<std::string> synthesize(std::span<const std::string> pool,
                                    const ErrorRates& synth,
                                    std::uint64_t seed,
                                    par::Exec exec = par::default_exec());

struct CopyPlan {
    std::vector<long> copies;  // per template
    long total = 0;
    int survivors = 0;
};

CopyPlan sample_copies(int n_templates, double r, double sigma,
                       std::uint64_t seed);

struct Reads {
    std::vector<std::string> seqs;
    std::vector<std::int32_t> source;  // template index per read (test aid)
};

// round(sd * n_references) reads sampled with replacement, copy-weighted,
// each corrupted independently; output canonicalized by (template, draw).
Reads sequence_reads(std::span<const std::string> templates,
                     const CopyPlan& plan, double sd, const ErrorRates& seq,
                     std::uint64_t seed, par::Exec exec = par::default_exec());

struct RunResult {
    Reads reads;
    int survivors = 0;
};

RunResult run_channel(std::span<const std::string> pool,
                      const ChannelProfile& profile, double r, double sd,
                      std::uint64_t seed, par::Exec exec = par::default_exec());

}  // namespace mahoraga::idsim
