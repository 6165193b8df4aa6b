#include "mahoraga/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

#include "mahoraga/analytics.hpp"
#include "mahoraga/digest.hpp"
#include "mahoraga/idsim.hpp"
#include "mahoraga/rng.hpp"

namespace mahoraga::bench {

std::vector<std::uint8_t> make_input(std::size_t len, std::uint64_t seed) {
    rng::Stream s(seed, rng::Stage::InputFile);
    std::vector<std::uint8_t> bytes(len);
    for (std::size_t i = 0; i < len; i += 8) {
        std::uint64_t w = s.next_u64();
        for (std::size_t b = 0; b < 8 && i + b < len; ++b) {
            bytes[i + b] = static_cast<std::uint8_t>(w >> (8 * b));
        }
    }
    return bytes;
}

std::string campaign_name(CampaignKind k) {
    switch (k) {
        case CampaignKind::Native: return "native";
        case CampaignKind::Matched: return "matched";
        case CampaignKind::Longevity: return "longevity";
        case CampaignKind::Length: return "length";
    }
    return "native";
}

CampaignKind campaign_from_name(std::string_view name) {
    if (name == "native") return CampaignKind::Native;
    if (name == "matched") return CampaignKind::Matched;
    if (name == "longevity") return CampaignKind::Longevity;
    if (name == "length") return CampaignKind::Length;
    throw std::invalid_argument("bench: unknown campaign");
}

CellResult run_cell(const Cell& cell, int trials, std::uint64_t seed_base,
                    const std::vector<std::uint8_t>& input, par::Exec exec,
                    const idsim::ChannelProfile* channel_override) {
    CellResult result;
    result.cell = cell;
    result.trials = trials;

    codec::CodecConfig cfg;
    cfg.profile = cell.profile;
    cfg.payload_nt = cell.payload_nt;
    cfg.r = cell.r;
    cfg.pool_seed = seed_base;
    cfg.parity_fraction = cell.parity_fraction;

    const std::string want_md5 = digest::md5_hex(input);
    const auto& channel = channel_override
                              ? *channel_override
                              : idsim::ChannelProfile::by_name(
                                    codec::profile_name(cell.profile));
    double r_eff = cell.r_channel.value_or(cell.r);

    double total_s = 0.0;
    try {
        codec::Pool pool = codec::encode_file(input, cfg, exec);
        result.n = pool.header.n;
        result.k_rs = pool.header.k_rs;
        for (int t = 0; t < trials; ++t) {
            auto t0 = std::chrono::steady_clock::now();
            bool ok = false;
            try {
                auto run = idsim::run_channel(pool.strands, channel, r_eff,
                                              cell.sd, seed_base + t, exec);
                auto decoded =
                    codec::decode_reads(run.reads.seqs, pool.header, exec);
                ok = decoded.report.success &&
                     decoded.report.md5_hex == want_md5;
            } catch (...) {
                ok = false;
            }
            auto t1 = std::chrono::steady_clock::now();
            total_s += std::chrono::duration<double>(t1 - t0).count();
            if (ok) ++result.successes;
        }
    } catch (...) {
        // Encode-stage failure: every trial counts as failed.
        result.successes = 0;
    }
    result.mean_runtime_s = trials > 0 ? total_s / trials : 0.0;
    if (result.successes == trials && trials > 0 && !cell.r_channel) {
        result.density = analytics::density_eb_per_g(
            static_cast<double>(input.size()), result.n, cell.payload_nt,
            cell.r);
    }
    return result;
}

namespace {

// Sequencing depth defaults: 2 on hifi, 10 on lofi for the native and
// matched campaigns; the longevity sweep reads at depth 15.
constexpr double kHifiSd = 2.0;
constexpr double kLofiSd = 10.0;
constexpr double kLongevitySd = 15.0;

std::vector<Cell> native_cells(bool full) {
    std::vector<Cell> cells;
    if (full) {
        for (double r : {0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            cells.push_back({codec::Profile::Hifi, r, kHifiSd, 126, {}, {}});
        }
        for (double r : {0.5, 1.0, 2.0, 5.0, 10.0}) {
            cells.push_back({codec::Profile::Lofi, r, kLofiSd, 126, {}, {}});
        }
    } else {
        cells.push_back({codec::Profile::Hifi, 0.5, kHifiSd, 126, {}, {}});
        cells.push_back({codec::Profile::Lofi, 5.0, kLofiSd, 126, {}, {}});
    }
    return cells;
}

double auto_parity_fraction(const Cell& cell, std::size_t input_len) {
    codec::CodecConfig cfg;
    cfg.profile = cell.profile;
    cfg.payload_nt = cell.payload_nt;
    cfg.r = cell.r;
    auto [k_rs, n] = codec::pool_size(input_len, cfg);
    return static_cast<double>(n - k_rs) / static_cast<double>(n);
}

std::vector<double> longevity_grid(double r_initial) {
    if (r_initial <= 1.0) return {1.0, 0.95, 0.92, 0.9, 0.88, 0.85};
    if (r_initial <= 2.0) return {2.0, 1.7, 1.5, 1.3};
    if (r_initial <= 5.0) return {5.0, 4.0, 3.5, 3.25, 3.0, 2.75};
    return {10.0, 7.0, 5.0, 4.0, 3.0, 2.0};
}

}  // namespace

CampaignResult run_campaign(CampaignKind kind, int trials,
                            std::uint64_t seed_base, bool full_grid,
                            par::Exec exec, bool verbose) {
    CampaignResult result;
    result.kind = kind;
    result.trials = trials;
    result.seed_base = seed_base;
    auto input = make_input(kInputBytes, seed_base);
    result.input_md5 = digest::md5_hex(input);

    auto log_cell = [&](const CellResult& cr) {
        if (!verbose) return;
        std::cerr << campaign_name(kind) << " " << codec::profile_name(cr.cell.profile)
                  << " r=" << cr.cell.r;
        if (cr.cell.r_channel) std::cerr << " r_ch=" << *cr.cell.r_channel;
        std::cerr << " sd=" << cr.cell.sd << " L=" << cr.cell.payload_nt
                  << " -> " << cr.successes << "/" << cr.trials
                  << " (" << cr.mean_runtime_s << " s/trial)\n";
    };

    switch (kind) {
        case CampaignKind::Native: {
            for (const Cell& cell : native_cells(full_grid)) {
                result.cells.push_back(run_cell(cell, trials, seed_base, input, exec));
                log_cell(result.cells.back());
            }
            break;
        }
        case CampaignKind::Matched: {
            for (Cell cell : native_cells(full_grid)) {
                cell.parity_fraction = auto_parity_fraction(cell, input.size());
                result.cells.push_back(run_cell(cell, trials, seed_base, input, exec));
                log_cell(result.cells.back());
            }
            break;
        }
        case CampaignKind::Longevity: {
            std::vector<double> initials =
                full_grid ? std::vector<double>{1.0, 2.0, 5.0, 10.0}
                          : std::vector<double>{5.0};
            auto model = analytics::LongevityModel::calibrated();
            for (double r0 : initials) {
                LongevitySummary summary;
                summary.r_initial = r0;
                int criterion = (29 * trials + 29) / 30;  // ceil(29 T / 30)
                for (double rc : longevity_grid(r0)) {
                    Cell cell{codec::Profile::Hifi, r0, kLongevitySd, 126, {}, rc};
                    auto cr = run_cell(cell, trials, seed_base, input, exec);
                    log_cell(cr);
                    result.cells.push_back(cr);
                    if (cr.successes >= criterion) {
                        if (!summary.cliff || rc < *summary.cliff) {
                            summary.cliff = rc;
                        }
                    }
                    summary.density = analytics::density_eb_per_g(
                        static_cast<double>(input.size()), cr.n, 126, r0);
                }
                if (summary.cliff && *summary.cliff < r0) {
                    summary.years = model.years_to_reach(r0, *summary.cliff);
                }
                result.longevity.push_back(summary);
            }
            break;
        }
        case CampaignKind::Length: {
            std::vector<int> lengths =
                full_grid ? std::vector<int>{126, 150, 200, 250, 300}
                          : std::vector<int>{126, 200};
            for (int L : lengths) {
                for (double r : {0.3, 0.5}) {
                    Cell cell{codec::Profile::Hifi, r, kHifiSd, L - 14, {}, {}};
                    result.cells.push_back(
                        run_cell(cell, trials, seed_base, input, exec));
                    log_cell(result.cells.back());
                }
            }
            break;
        }
    }
    return result;
}

namespace {

nlohmann::json cell_to_json(const CellResult& cr) {
    nlohmann::json c;
    c["profile"] = codec::profile_name(cr.cell.profile);
    c["r"] = cr.cell.r;
    c["sd"] = cr.cell.sd;
    c["payload_nt"] = cr.cell.payload_nt;
    if (cr.cell.parity_fraction) {
        c["parity_fraction"] = *cr.cell.parity_fraction;
    } else {
        c["parity_fraction"] = nullptr;
    }
    if (cr.cell.r_channel) {
        c["r_channel"] = *cr.cell.r_channel;
    } else {
        c["r_channel"] = nullptr;
    }
    c["n"] = cr.n;
    c["k_rs"] = cr.k_rs;
    c["successes"] = cr.successes;
    c["trials"] = cr.trials;
    if (cr.density) {
        c["density"] = *cr.density;
    } else {
        c["density"] = nullptr;
    }
    c["mean_runtime_s"] = cr.mean_runtime_s;
    return c;
}

}  // namespace

std::string campaign_to_json(const CampaignResult& result) {
    nlohmann::json j;
    j["campaign"] = campaign_name(result.kind);
    j["trials"] = result.trials;
    j["seed_base"] = result.seed_base;
    j["input_md5"] = result.input_md5;
    j["input_bytes"] = kInputBytes;
    j["cells"] = nlohmann::json::array();
    for (const auto& cr : result.cells) j["cells"].push_back(cell_to_json(cr));
    if (result.kind == CampaignKind::Longevity) {
        j["longevity"] = nlohmann::json::array();
        for (const auto& s : result.longevity) {
            nlohmann::json l;
            l["r_initial"] = s.r_initial;
            if (s.cliff) {
                l["cliff"] = *s.cliff;
            } else {
                l["cliff"] = nullptr;
            }
            l["years"] = s.years;
            l["density"] = s.density;
            j["longevity"].push_back(l);
        }
    }
    return j.dump(2);
}

void write_campaign_report(const CampaignResult& result,
                           const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::string path = dir + "/" + campaign_name(result.kind) + ".json";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("bench: cannot open " + path);
    out << campaign_to_json(result) << '\n';
    if (!out) throw std::runtime_error("bench: short write to " + path);
}

void csv_from_reports(const std::vector<std::string>& json_paths,
                      const std::string& csv_path) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("bench: cannot open " + csv_path);
    out << "campaign,profile,r,sd,r_channel,payload_nt,n,k_rs,successes,"
           "trials,density,ceiling,fraction\n";
    for (const auto& path : json_paths) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("bench: cannot open " + path);
        nlohmann::json j;
        in >> j;
        for (const auto& c : j["cells"]) {
            double r = c["r"].get<double>();
            double ceiling = analytics::alphabet_ceiling(r);
            out << j["campaign"].get<std::string>() << ','
                << c["profile"].get<std::string>() << ',' << r << ','
                << c["sd"].get<double>() << ',';
            if (!c["r_channel"].is_null()) out << c["r_channel"].get<double>();
            out << ',' << c["payload_nt"].get<int>() << ','
                << c["n"].get<int>() << ',' << c["k_rs"].get<int>() << ','
                << c["successes"].get<int>() << ',' << c["trials"].get<int>()
                << ',';
            if (!c["density"].is_null()) {
                double density = c["density"].get<double>();
                out << density << ',' << ceiling << ',' << density / ceiling;
            } else {
                out << ',' << ceiling << ',';
            }
            out << '\n';
        }
    }
    if (!out) throw std::runtime_error("bench: short write to " + csv_path);
}

}  // namespace mahoraga::bench
