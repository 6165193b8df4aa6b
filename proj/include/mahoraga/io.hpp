// File formats: FASTA-like pools and reads, the plain-text pool side header,
// and JSON decode reports.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mahoraga/codec.hpp"

namespace mahoraga::io {

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

// Pool strands: ">idx=<i>" headers. Reads: ">read=<j>".
void write_pool_fasta(const std::string& path,
                      const std::vector<std::string>& strands);
void write_reads_fasta(const std::string& path,
                       const std::vector<std::string>& reads);
std::vector<std::string> read_fasta(const std::string& path);

// key=value side header.
void write_pool_header(const std::string& path, const codec::PoolHeader& h);
codec::PoolHeader read_pool_header(const std::string& path);

std::string report_to_json(const codec::DecodeReport& report);

}  // namespace mahoraga::io
