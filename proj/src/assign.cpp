#include "mahoraga/assign.hpp"

#include <algorithm>
#include <limits>

#include "mahoraga/dna.hpp"

namespace mahoraga::assign {

namespace {

// Packed 2-bit 8-mers of a sequence, deduplicated; windows containing
// non-ACGT characters are dropped.
std::vector<std::uint32_t> distinct_kmers(std::string_view seq) {
    std::vector<std::uint32_t> out;
    if (seq.size() < kK) return out;
    std::uint32_t acc = 0;
    int run = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        int code = dna::base_code(seq[i]);
        if (code < 0) {
            run = 0;
            acc = 0;
            continue;
        }
        acc = ((acc << 2) | static_cast<std::uint32_t>(code)) &
              ((1u << (2 * kK)) - 1);
        if (++run >= kK) out.push_back(acc);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

KmerIndex KmerIndex::build(const std::vector<std::string>& sources) {
    KmerIndex index;
    for (std::size_t ref = 0; ref < sources.size(); ++ref) {
        for (std::uint32_t kmer : distinct_kmers(sources[ref])) {
            index.buckets_[kmer].push_back(static_cast<std::int32_t>(ref));
        }
    }
    return index;
}

std::vector<int> shortlist(std::string_view read, const KmerIndex& index) {
    std::vector<int> out;
    auto kmers = distinct_kmers(read);
    if (kmers.empty()) return out;

    // Shared-count accumulation over the touched references only.
    std::vector<std::pair<std::int32_t, int>> counts;  // (ref, count)
    for (std::uint32_t kmer : kmers) {
        for (std::int32_t ref : index.bucket(kmer)) {
            auto it = std::find_if(counts.begin(), counts.end(),
                                   [ref](const auto& p) { return p.first == ref; });
            if (it == counts.end()) {
                counts.emplace_back(ref, 1);
            } else {
                ++it->second;
            }
        }
    }
    std::sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    for (const auto& [ref, cnt] : counts) {
        out.push_back(ref);
        if (static_cast<int>(out.size()) == kShortlistCap) break;
    }
    return out;
}

Assignment assign_read(std::string_view read,
                       const std::vector<int>& candidates,
                       const std::vector<phmm::ProfileHmm>& hmms) {
    Assignment a;
    if (candidates.empty()) return a;
    double best = -std::numeric_limits<double>::infinity();
    int best_ref = -1;
    for (int ref : candidates) {
        double s = hmms[ref].assignment_score(read);
        if (s > best || (s == best && ref < best_ref)) {
            best = s;
            best_ref = ref;
        }
    }
    if (best_ref < 0 ||
        best < kScorePerBaseCut * static_cast<double>(read.size())) {
        return a;
    }
    a.ref = best_ref;
    a.score = best;
    return a;
}

}  // namespace mahoraga::assign
