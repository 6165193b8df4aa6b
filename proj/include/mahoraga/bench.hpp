// Benchmark campaigns: seeded multi-trial encode/simulate/decode cells,
// success accounting, decoding-cliff search, and report emission.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mahoraga/codec.hpp"
#include "mahoraga/parallel.hpp"

namespace mahoraga::idsim {
struct ChannelProfile;
}

namespace mahoraga::bench {

constexpr std::size_t kInputBytes = 19456;

// Deterministic pseudo-random input file.
std::vector<std::uint8_t> make_input(std::size_t len, std::uint64_t seed);

enum class CampaignKind { Native, Matched, Longevity, Length };

std::string campaign_name(CampaignKind k);
CampaignKind campaign_from_name(std::string_view name);

struct Cell {
    codec::Profile profile = codec::Profile::Hifi;
    double r = 0.5;  // encode-time redundancy (r_initial for longevity)
    double sd = 2.0;
    int payload_nt = 126;
    std::optional<double> parity_fraction;
    std::optional<double> r_channel;  // longevity: swept channel redundancy
};

struct CellResult {
    Cell cell;
    int n = 0;
    int k_rs = 0;
    int successes = 0;
    int trials = 0;
    // Reported only when every trial recovered the input byte-exactly.
    std::optional<double> density;
    double mean_runtime_s = 0.0;
};

struct LongevitySummary {
    double r_initial = 0.0;
    std::optional<double> cliff;  // lowest channel r meeting the criterion
    double years = 0.0;           // calibrated depurination mapping
    double density = 0.0;         // at the initial redundancy
};

struct CampaignResult {
    CampaignKind kind = CampaignKind::Native;
    int trials = 0;
    std::uint64_t seed_base = 0;
    std::string input_md5;
    std::vector<CellResult> cells;
    std::vector<LongevitySummary> longevity;
};

// Success requires byte-exact recovery (MD5 equality); per-trial exceptions
// count as failures. Trial t simulates with seed seed_base + t. A non-null
// channel override replaces the profile-named channel (test hook).
CellResult run_cell(const Cell& cell, int trials, std::uint64_t seed_base,
                    const std::vector<std::uint8_t>& input,
                    par::Exec exec = par::default_exec(),
                    const idsim::ChannelProfile* channel_override = nullptr);

CampaignResult run_campaign(CampaignKind kind, int trials,
                            std::uint64_t seed_base, bool full_grid = false,
                            par::Exec exec = par::default_exec(),
                            bool verbose = false);

std::string campaign_to_json(const CampaignResult& result);
void write_campaign_report(const CampaignResult& result,
                           const std::string& dir);

// Flat CSV across campaign JSON reports: one row per cell with density,
// alphabet ceiling, and achieved fraction.
void csv_from_reports(const std::vector<std::string>& json_paths,
                      const std::string& csv_path);

}  // namespace mahoraga::bench
