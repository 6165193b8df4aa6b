#include "mahoraga/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mahoraga::io {

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("io: cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("io: cannot open " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("io: short write to " + path);
}

namespace {

void write_fasta(const std::string& path, const std::string& tag,
                 const std::vector<std::string>& seqs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("io: cannot open " + path);
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        out << '>' << tag << '=' << i << '\n' << seqs[i] << '\n';
    }
    if (!out) throw std::runtime_error("io: short write to " + path);
}

}  // namespace

void write_pool_fasta(const std::string& path,
                      const std::vector<std::string>& strands) {
    write_fasta(path, "idx", strands);
}

void write_reads_fasta(const std::string& path,
                       const std::vector<std::string>& reads) {
    write_fasta(path, "read", reads);
}

std::vector<std::string> read_fasta(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("io: cannot open " + path);
    std::vector<std::string> seqs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '>') {
            seqs.emplace_back();
        } else if (!seqs.empty()) {
            seqs.back() += line;
        }
    }
    return seqs;
}

void write_pool_header(const std::string& path, const codec::PoolHeader& h) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("io: cannot open " + path);
    out << "version=" << h.version << '\n'
        << "L=" << h.file_len << '\n'
        << "n=" << h.n << '\n'
        << "k_rs=" << h.k_rs << '\n'
        << "profile=" << codec::profile_name(h.profile) << '\n'
        << "pool_seed=" << h.pool_seed << '\n'
        << "crc_params=" << h.crc_params << '\n'
        << "gf_poly=0x" << std::hex << h.gf_poly << std::dec << '\n'
        << "strand_nt=" << h.strand_nt << '\n';
    if (!out) throw std::runtime_error("io: short write to " + path);
}

codec::PoolHeader read_pool_header(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("io: cannot open " + path);
    codec::PoolHeader h;
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "version") {
            h.version = std::stoi(value);
        } else if (key == "L") {
            h.file_len = std::stoull(value);
        } else if (key == "n") {
            h.n = std::stoi(value);
        } else if (key == "k_rs") {
            h.k_rs = std::stoi(value);
        } else if (key == "profile") {
            h.profile = codec::profile_from_name(value);
        } else if (key == "pool_seed") {
            h.pool_seed = std::stoull(value);
        } else if (key == "crc_params") {
            h.crc_params = value;
        } else if (key == "gf_poly") {
            h.gf_poly = static_cast<std::uint32_t>(std::stoul(value, nullptr, 0));
        } else if (key == "strand_nt") {
            h.strand_nt = std::stoi(value);
        }
    }
    if (h.n <= 0 || h.k_rs <= 0 || h.file_len == 0) {
        throw std::runtime_error("io: incomplete pool header in " + path);
    }
    return h;
}

std::string report_to_json(const codec::DecodeReport& report) {
    nlohmann::json j;
    j["success"] = report.success;
    j["md5_hex"] = report.md5_hex;
    j["status_counts"] = {{"received", report.received},
                          {"erased", report.erased},
                          {"bm_promoted", report.bm_promoted},
                          {"turbo_recovered", report.turbo_recovered}};
    j["codeword_success"] = report.codeword_success;
    j["reads_processed"] = report.reads_processed;
    return j.dump(2);
}

}  // namespace mahoraga::io
