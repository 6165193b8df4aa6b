#include "mahoraga/idsim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mahoraga/dna.hpp"

namespace mahoraga::idsim {

const ChannelProfile& ChannelProfile::hifi() {
    static const ChannelProfile p{
        "hifi", {5e-4, 2e-4, 1e-4}, {8e-4, 1e-4, 5e-5}, 0.3};
    return p;
}

const ChannelProfile& ChannelProfile::lofi() {
    static const ChannelProfile p{
        "lofi", {5e-3, 5e-3, 1e-3}, {3e-3, 5e-4, 2e-4}, 0.3};
    return p;
}

const ChannelProfile& ChannelProfile::by_name(std::string_view name) {
    if (name == "hifi") return hifi();
    if (name == "lofi") return lofi();
    throw std::invalid_argument("idsim: unknown channel profile");
}

std::string corrupt(std::string_view seq, const ErrorRates& rates,
                    rng::Stream& stream) {
    std::string out;
    out.reserve(seq.size() + 4);
    for (char c : seq) {
        if (stream.next_double() < rates.ins) {
            out.push_back(dna::base_char(static_cast<int>(stream.next_below(4))));
        }
        if (stream.next_double() < rates.del) continue;
        if (stream.next_double() < rates.sub) {
            int v = dna::base_code(c);
            int other = (v + 1 + static_cast<int>(stream.next_below(3))) & 3;
            out.push_back(dna::base_char(other));
        } else {
            out.push_back(c);
        }
    }
    if (stream.next_double() < rates.ins) {
        out.push_back(dna::base_char(static_cast<int>(stream.next_below(4))));
    }
    return out;
}

std::vector<std::string> synthesize(std::span<const std::string> pool,
                                    const ErrorRates& synth,
                                    std::uint64_t seed, par::Exec exec) {
    std::vector<std::string> templates(pool.size());
    par::for_index(
        pool.size(),
        [&](std::size_t i) {
            rng::Stream s(seed, rng::Stage::SynthTemplate, i);
            templates[i] = corrupt(pool[i], synth, s);
        },
        exec);
    return templates;
}

CopyPlan sample_copies(int n_templates, double r, double sigma,
                       std::uint64_t seed) {
    if (r <= 0.0) throw std::invalid_argument("idsim: r must be positive");
    std::vector<double> weights(n_templates);
    for (int i = 0; i < n_templates; ++i) {
        rng::Stream s(seed, rng::Stage::CopyWeight, static_cast<std::uint64_t>(i));
        weights[i] = std::exp(sigma * s.next_normal());
    }
    // Sample-mean normalization over the whole pool.
    double mean = std::accumulate(weights.begin(), weights.end(), 0.0) /
                  std::max(1, n_templates);

    CopyPlan plan;
    plan.copies.resize(n_templates);
    for (int i = 0; i < n_templates; ++i) {
        rng::Stream s(seed, rng::Stage::CopyCount, static_cast<std::uint64_t>(i));
        long c = s.next_poisson(r * weights[i] / mean);
        plan.copies[i] = c;
        plan.total += c;
        if (c > 0) ++plan.survivors;
    }
    return plan;
}

Reads sequence_reads(std::span<const std::string> templates,
                     const CopyPlan& plan, double sd, const ErrorRates& seq,
                     std::uint64_t seed, par::Exec exec) {
    Reads reads;
    if (sd <= 0.0) throw std::invalid_argument("idsim: sd must be positive");
    long n_reads = std::lround(sd * static_cast<double>(templates.size()));
    if (plan.total <= 0 || n_reads <= 0) return reads;  // empty molecule pool

    std::vector<long> cumulative(plan.copies.size() + 1, 0);
    for (std::size_t i = 0; i < plan.copies.size(); ++i) {
        cumulative[i + 1] = cumulative[i] + plan.copies[i];
    }

    std::vector<std::string> seqs(n_reads);
    std::vector<std::int32_t> source(n_reads);
    par::for_index(
        static_cast<std::size_t>(n_reads),
        [&](std::size_t j) {
            rng::Stream s(seed, rng::Stage::Read, j);
            long pick = static_cast<long>(
                s.next_below(static_cast<std::uint32_t>(plan.total)));
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(),
                                       pick);
            auto t = static_cast<std::int32_t>(
                std::distance(cumulative.begin(), it) - 1);
            source[j] = t;
            seqs[j] = corrupt(templates[t], seq, s);
        },
        exec);

    // Canonical order: by (template, draw index). Draw order within a
    // template is already ascending, so a stable sort on template suffices.
    std::vector<std::int32_t> order(n_reads);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return source[a] < source[b];
    });
    reads.seqs.reserve(n_reads);
    reads.source.reserve(n_reads);
    for (std::int32_t j : order) {
        reads.seqs.push_back(std::move(seqs[j]));
        reads.source.push_back(source[j]);
    }
    return reads;
}

RunResult run_channel(std::span<const std::string> pool,
                      const ChannelProfile& profile, double r, double sd,
                      std::uint64_t seed, par::Exec exec) {
    RunResult out;
    auto templates = synthesize(pool, profile.synth, seed, exec);
    auto plan = sample_copies(static_cast<int>(pool.size()), r, profile.sigma,
                              seed);
    out.survivors = plan.survivors;
    out.reads = sequence_reads(templates, plan, sd, profile.seq, seed, exec);
    return out;
}

}  // namespace mahoraga::idsim
