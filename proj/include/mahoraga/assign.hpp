// Read-to-reference assignment: 8-mer shortlist over the address regions,
// banded-forward argmax, and rejection of unassignable reads.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mahoraga/phmm.hpp"

namespace mahoraga::assign {

constexpr int kK = 8;
constexpr int kShortlistCap = 15;

class KmerIndex {
public:
    // One source string per reference: address region plus the fixed flank
    // padding. Each reference is filed once under each of its distinct 8-mers.
    static KmerIndex build(const std::vector<std::string>& sources);

    const std::vector<std::int32_t>& bucket(std::uint32_t kmer) const {
        return buckets_[kmer];
    }

private:
    std::vector<std::vector<std::int32_t>> buckets_{1u << (2 * kK)};
};

// Candidates ranked by shared distinct-8-mer count, ties to the lower
// reference index, at most kShortlistCap returned. Reads shorter than 8 nt
// get an empty shortlist.
std::vector<int> shortlist(std::string_view read, const KmerIndex& index);

struct Assignment {
    int ref = -1;  // -1: unassigned
    double score = 0.0;
};

// Rejection threshold as a multiple of read length, applied to the
// payload-baseline-normalized score (natural log). Clean reads score near 0
// and reads of foreign references near -6 per mismatching address base, so
// the cut rejects junk while keeping legitimately noisy reads.
constexpr double kScorePerBaseCut = -0.15;

// Argmax of the HMM score over the shortlist; unassigned when the best score
// falls below kScorePerBaseCut * read length or the shortlist is empty.
Assignment assign_read(std::string_view read,
                       const std::vector<int>& candidates,
                       const std::vector<phmm::ProfileHmm>& hmms);

}  // namespace mahoraga::assign
