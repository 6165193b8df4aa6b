// Command-line front end: encode, simulate, decode, bench, report.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mahoraga/bench.hpp"
#include "mahoraga/codec.hpp"
#include "mahoraga/digest.hpp"
#include "mahoraga/idsim.hpp"
#include "mahoraga/io.hpp"
#include "mahoraga/parallel.hpp"

namespace {

using namespace mahoraga;

struct EncodeArgs {
    std::string in, out, profile = "hifi";
    double r = 0.5;
    double pi = 0.0;
    double safety = 1.08;
    std::uint64_t seed = 1;
    int strand_nt = 140;
    double parity_fraction = -1.0;
};

int run_encode(const EncodeArgs& a) {
    codec::CodecConfig cfg;
    cfg.profile = codec::profile_from_name(a.profile);
    cfg.payload_nt = a.strand_nt - codec::kAddressLen;
    cfg.r = a.r;
    cfg.pi = a.pi;
    cfg.safety = a.safety;
    cfg.pool_seed = a.seed;
    if (a.parity_fraction >= 0.0) cfg.parity_fraction = a.parity_fraction;

    auto bytes = io::read_file(a.in);
    auto pool = codec::encode_file(bytes, cfg);
    io::write_pool_fasta(a.out, pool.strands);
    io::write_pool_header(a.out + ".hdr", pool.header);
    std::cout << "encoded " << bytes.size() << " bytes into " << pool.header.n
              << " strands (k_rs=" << pool.header.k_rs << ", "
              << pool.header.strand_nt << " nt)\n"
              << "pool:   " << a.out << "\n"
              << "header: " << a.out << ".hdr\n";
    return 0;
}

struct SimulateArgs {
    std::string pool, out, profile = "hifi";
    double r = 0.5;
    double sd = 2.0;
    std::uint64_t seed = 0;
};

int run_simulate(const SimulateArgs& a) {
    auto strands = io::read_fasta(a.pool);
    const auto& channel = idsim::ChannelProfile::by_name(a.profile);
    auto run = idsim::run_channel(strands, channel, a.r, a.sd, a.seed);
    io::write_reads_fasta(a.out, run.reads.seqs);
    std::ofstream side(a.out + ".json");
    side << "{\n  \"profile\": \"" << a.profile << "\",\n  \"r\": " << a.r
         << ",\n  \"sd\": " << a.sd << ",\n  \"seed\": " << a.seed
         << ",\n  \"survivors\": " << run.survivors
         << ",\n  \"reads\": " << run.reads.seqs.size() << "\n}\n";
    std::cout << "simulated " << run.reads.seqs.size() << " reads from "
              << run.survivors << "/" << strands.size()
              << " surviving templates\n";
    return 0;
}

struct DecodeArgs {
    std::string reads, header, out, report;
};

int run_decode(const DecodeArgs& a) {
    auto header = io::read_pool_header(a.header);
    auto reads = io::read_fasta(a.reads);
    auto result = codec::decode_reads(reads, header);
    if (!a.report.empty()) {
        std::ofstream rep(a.report);
        rep << io::report_to_json(result.report) << '\n';
    }
    if (!result.report.success) {
        std::cerr << "decode FAILED (" << result.report.erased << "/"
                  << header.n << " oligos erased)\n";
        return 1;
    }
    io::write_file(a.out, result.bytes);
    std::cout << "decoded " << result.bytes.size() << " bytes, md5 "
              << result.report.md5_hex << "\n";
    return 0;
}

struct BenchArgs {
    std::string campaign = "native";
    int trials = 30;
    std::uint64_t seed_base = 42;
    std::string out;
    bool full = false;
};

int run_bench(const BenchArgs& a) {
    auto kind = bench::campaign_from_name(a.campaign);
    auto result = bench::run_campaign(kind, a.trials, a.seed_base, a.full,
                                      par::default_exec(), /*verbose=*/true);
    bench::write_campaign_report(result, a.out);
    std::cout << "wrote " << a.out << "/" << bench::campaign_name(kind)
              << ".json\n";
    return 0;
}

struct ReportArgs {
    std::string in, csv;
};

int run_report(const ReportArgs& a) {
    std::vector<std::string> paths;
    for (const auto& entry : std::filesystem::directory_iterator(a.in)) {
        if (entry.path().extension() == ".json") {
            paths.push_back(entry.path().string());
        }
    }
    std::sort(paths.begin(), paths.end());
    bench::csv_from_reports(paths, a.csv);
    std::cout << "wrote " << a.csv << " from " << paths.size()
              << " report(s)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mahoraga: soft-information DNA storage codec"};
    app.require_subcommand(1);

    EncodeArgs enc;
    auto* cmd_enc = app.add_subcommand("encode", "encode a file into a strand pool");
    cmd_enc->add_option("--in", enc.in, "input file")->required();
    cmd_enc->add_option("--out", enc.out, "output pool FASTA")->required();
    cmd_enc->add_option("--profile", enc.profile, "hifi or lofi")
        ->check(CLI::IsMember({"hifi", "lofi"}));
    cmd_enc->add_option("--r", enc.r, "requested physical redundancy")->required();
    cmd_enc->add_option("--pi", enc.pi, "inner-code pass rate override");
    cmd_enc->add_option("--safety", enc.safety, "outer safety margin");
    cmd_enc->add_option("--seed", enc.seed, "pool seed");
    cmd_enc->add_option("--strand-nt", enc.strand_nt, "strand length in nt");
    cmd_enc->add_option("--parity-fraction", enc.parity_fraction,
                        "override outer parity fraction");

    SimulateArgs sim;
    auto* cmd_sim = app.add_subcommand("simulate", "run the channel simulator");
    cmd_sim->add_option("--pool", sim.pool, "pool FASTA")->required();
    cmd_sim->add_option("--out", sim.out, "output reads FASTA")->required();
    cmd_sim->add_option("--profile", sim.profile, "hifi or lofi")
        ->check(CLI::IsMember({"hifi", "lofi"}));
    cmd_sim->add_option("--r", sim.r, "physical redundancy")->required();
    cmd_sim->add_option("--sd", sim.sd, "sequencing depth")->required();
    cmd_sim->add_option("--seed", sim.seed, "channel seed")->required();

    DecodeArgs dec;
    auto* cmd_dec = app.add_subcommand("decode", "decode reads back to bytes");
    cmd_dec->add_option("--reads", dec.reads, "reads FASTA")->required();
    cmd_dec->add_option("--header", dec.header, "pool header file")->required();
    cmd_dec->add_option("--out", dec.out, "output file")->required();
    cmd_dec->add_option("--report", dec.report, "decode report JSON");

    BenchArgs ben;
    auto* cmd_ben = app.add_subcommand("bench", "run a benchmark campaign");
    cmd_ben->add_option("--campaign", ben.campaign, "campaign kind")
        ->check(CLI::IsMember({"native", "matched", "longevity", "length"}));
    cmd_ben->add_option("--trials", ben.trials, "trials per cell");
    cmd_ben->add_option("--seed-base", ben.seed_base, "base seed");
    cmd_ben->add_option("--out", ben.out, "report directory")->required();
    cmd_ben->add_flag("--full", ben.full, "run the full grid");

    ReportArgs rep;
    auto* cmd_rep = app.add_subcommand("report", "flatten reports to CSV");
    cmd_rep->add_option("--in", rep.in, "report directory")->required();
    cmd_rep->add_option("--csv", rep.csv, "output CSV")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (cmd_enc->parsed()) return run_encode(enc);
        if (cmd_sim->parsed()) return run_simulate(sim);
        if (cmd_dec->parsed()) return run_decode(dec);
        if (cmd_ben->parsed()) return run_bench(ben);
        if (cmd_rep->parsed()) return run_report(rep);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
