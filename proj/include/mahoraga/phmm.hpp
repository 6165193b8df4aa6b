// Profile HMM scoring of reads against reference strands.
//
// References are payload-agnostic: the 14-nt address region emits its known
// base with substitution noise, payload positions emit uniformly over
// {A,C,G,T}. The banded forward pass scores assignment candidates; the
// forward-backward pass yields per-position posteriors over the true payload
// base, which fuse across reads by log-product and convert to per-bit LLRs.
//
// Transitions are uniform per state: P(->match) = 1 - p_ins - p_del,
// P(->insert) = p_ins (self-loop included), P(->delete) = p_del. With that
// parameterization the three-state recurrences collapse onto the state sum,
// which keeps the inner loop to a handful of multiplies.

#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mahoraga/parallel.hpp"

namespace mahoraga::phmm {

struct HmmParams {
    double p_sub = 0;
    double p_ins = 0;
    double p_del = 0;
    int band = 8;  // alignment band halfwidth
};

// Band covers +-5 sigma of indel drift, floor 8.
int band_halfwidth(int ref_len, double p_ins, double p_del);

struct PosteriorMatrix {
    // One row per payload position, normalized over {A,C,G,T}.
    std::vector<std::array<double, 4>> rows;
    int coverage = 0;  // reads fused into this matrix

    // min over positions of the top base mass; the early-stop statistic.
    double min_top_mass() const;
};

class ProfileHmm {
public:
    ProfileHmm(std::string address, int payload_len, HmmParams prm);

    int ref_len() const { return static_cast<int>(address_.size()) + payload_len_; }
    int payload_len() const { return payload_len_; }
    const HmmParams& params() const { return prm_; }

    // log P(read | model), natural log; -inf when the read cannot reach the
    // end of the model inside the band.
    double forward_loglik(std::string_view read) const;

    // forward_loglik minus the payload-uniform baseline payload_len*ln(1/4);
    // approximately 0 for a clean read of this reference, strongly negative
    // for reads of other references. The assignment threshold applies here.
    double assignment_score(std::string_view read) const;

    PosteriorMatrix posteriors(std::string_view read) const;

private:
    template <bool kKeepState>
    double forward_impl(std::string_view read, std::vector<double>* match_out,
                        std::vector<double>* scale_out,
                        std::vector<double>* final_col) const;

    std::string address_;          // known 5' bases
    std::vector<int> address_code_;
    int payload_len_;
    HmmParams prm_;
};

// Log-product fusion; the empty list yields the uniform matrix.
PosteriorMatrix fuse(std::span<const PosteriorMatrix> parts, int payload_len);

struct FuseResult {
    PosteriorMatrix posterior;
    int reads_processed = 0;
};

// Processes reads in batches, stopping once every payload position carries
// at least `threshold` mass on its top base. Reads must already be in a
// deterministic order.
FuseResult fuse_adaptive(std::span<const std::string> reads,
                         const ProfileHmm& hmm, double threshold = 0.999,
                         int batch = 4,
                         par::Exec exec = par::default_exec());

// Two LLRs per payload base under the Gray pair mapping, clamped to +-clamp.
std::vector<double> posteriors_to_llrs(const PosteriorMatrix& p,
                                       double clamp = 30.0);

}  // namespace mahoraga::phmm
