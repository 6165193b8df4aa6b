#include <doctest.h>

#include <random>
#include <stdexcept>
#include <set>

#include "mahoraga/bench.hpp"
#include "mahoraga/codec.hpp"
#include "mahoraga/digest.hpp"
#include "mahoraga/idsim.hpp"

using namespace mahoraga;

namespace {

std::vector<std::uint8_t> random_bytes(std::size_t len, std::uint64_t seed) {
    return bench::make_input(len, seed);
}

}  // namespace

TEST_CASE("pool sizing reproduces the published pool sizes") {
    codec::CodecConfig cfg;
    cfg.profile = codec::Profile::Hifi;

    cfg.r = 0.2;
    auto [k1, n1] = codec::pool_size(19456, cfg);
    CHECK(k1 == 749);
    CHECK(n1 == 4508);

    cfg.r = 0.5;
    CHECK(codec::pool_size(19456, cfg).second == 2077);

    cfg.r = 0.3;
    CHECK(codec::pool_size(19456, cfg).second == 3153);
}

TEST_CASE("pool sizing floor, overrides, and limits") {
    codec::CodecConfig cfg;
    cfg.profile = codec::Profile::Hifi;

    // Minimum-parity floor: tiny file at huge redundancy.
    cfg.r = 50.0;
    cfg.pi = 1.0;
    cfg.safety = 1.0;
    auto [k, n] = codec::pool_size(26, cfg);
    CHECK(k == 1);
    CHECK(n == 5);

    // Parity-fraction override bypasses the formula and the floor.
    codec::CodecConfig ov;
    ov.parity_fraction = 0.0;
    CHECK(codec::pool_size(19456, ov) ==
          std::pair<int, int>{749, 749});
    ov.parity_fraction = 0.5;
    CHECK(codec::pool_size(19456, ov).second == 1498);

    // GF(2^16) length cap.
    codec::CodecConfig big;
    big.r = 0.01;
    big.pi = 0.2;
    CHECK_THROWS_AS(codec::pool_size(20000000, big), std::length_error);
    CHECK_THROWS_AS(codec::pool_size(0, cfg), std::invalid_argument);
}

TEST_CASE("lofi pool sizing uses the lofi payload and pass rate") {
    codec::CodecConfig cfg;
    cfg.profile = codec::Profile::Lofi;
    cfg.r = 5.0;
    auto [k, n] = codec::pool_size(19456, cfg);
    CHECK(k == 885);  // ceil(19456 / 22)
    CHECK(n == 1208);
}

TEST_CASE("encode is deterministic and shaped correctly") {
    auto bytes = random_bytes(1024, 5);
    codec::CodecConfig cfg;
    cfg.r = 1.0;
    cfg.pool_seed = 9;
    auto pool_a = codec::encode_file(bytes, cfg, par::Exec::Serial);
    auto pool_b = codec::encode_file(bytes, cfg, par::Exec::OpenMp);
    CHECK(pool_a.strands == pool_b.strands);
    CHECK(pool_a.header.n == static_cast<int>(pool_a.strands.size()));
    CHECK(pool_a.header.k_rs == 40);  // ceil(1024 / 26)
    for (const auto& s : pool_a.strands) CHECK(s.size() == 140);

    std::set<std::string> uniq(pool_a.strands.begin(), pool_a.strands.end());
    CHECK(uniq.size() == pool_a.strands.size());
}

TEST_CASE("noiseless round trip with one clean read per strand") {
    auto bytes = random_bytes(2048, 6);
    codec::CodecConfig cfg;
    cfg.r = 1.0;
    cfg.pool_seed = 4;
    auto pool = codec::encode_file(bytes, cfg);
    auto result = codec::decode_reads(pool.strands, pool.header);
    REQUIRE(result.report.success);
    CHECK(result.bytes == bytes);
    CHECK(result.report.erased == 0);
    CHECK(result.report.received == pool.header.n);
    CHECK(result.report.md5_hex == digest::md5_hex(bytes));
    CHECK(result.report.bm_promoted == 0);
    CHECK(result.report.turbo_recovered == 0);
    for (bool ok : result.report.codeword_success) CHECK(ok);
}

TEST_CASE("withheld oligos within parity capacity decode as erasures") {
    auto bytes = random_bytes(1024, 7);
    codec::CodecConfig cfg;
    cfg.r = 0.5;
    cfg.pool_seed = 12;
    auto pool = codec::encode_file(bytes, cfg);
    int drop = pool.header.n / 10;
    REQUIRE(drop <= pool.header.n - pool.header.k_rs);

    std::vector<std::string> reads;
    for (int i = 0; i < pool.header.n; ++i) {
        if (i % 10 == 3 && drop > 0) {
            --drop;
            continue;  // withhold every read of this oligo
        }
        reads.push_back(pool.strands[i]);
    }
    auto result = codec::decode_reads(reads, pool.header);
    REQUIRE(result.report.success);
    CHECK(result.bytes == bytes);
    CHECK(result.report.erased == pool.header.n / 10);
}

TEST_CASE("erasures beyond parity capacity fail without corruption") {
    auto bytes = random_bytes(512, 8);
    codec::CodecConfig cfg;
    cfg.parity_fraction = 0.1;  // 23 oligos, 3 of them parity
    cfg.pool_seed = 21;
    auto pool = codec::encode_file(bytes, cfg);
    int spare = pool.header.n - pool.header.k_rs;
    std::vector<std::string> reads(pool.strands.begin() + spare + 1,
                                   pool.strands.end());
    auto result = codec::decode_reads(reads, pool.header);
    CHECK_FALSE(result.report.success);
    CHECK(result.bytes.empty());
}

TEST_CASE("reads in any order decode identically") {
    auto bytes = random_bytes(1024, 9);
    codec::CodecConfig cfg;
    cfg.r = 1.0;
    cfg.pool_seed = 33;
    auto pool = codec::encode_file(bytes, cfg);
    auto run = idsim::run_channel(pool.strands, idsim::ChannelProfile::hifi(),
                                  1.5, 3.0, 1001);

    auto reads = run.reads.seqs;
    auto forward = codec::decode_reads(reads, pool.header, par::Exec::Serial);
    std::mt19937_64 rng(43);
    std::shuffle(reads.begin(), reads.end(), rng);
    auto shuffled = codec::decode_reads(reads, pool.header, par::Exec::OpenMp);

    CHECK(forward.report.success == shuffled.report.success);
    CHECK(forward.report.md5_hex == shuffled.report.md5_hex);
    CHECK(forward.report.received == shuffled.report.received);
    CHECK(forward.report.erased == shuffled.report.erased);
    CHECK(forward.bytes == shuffled.bytes);
}

TEST_CASE("hifi end-to-end through the channel simulator") {
    auto bytes = random_bytes(2048, 10);
    codec::CodecConfig cfg;
    cfg.r = 1.0;
    // Small pools leave the 1.08 sizing margin at a fraction of a sigma of
    // the dropout noise; a lower assumed pass rate restores smoke-test
    // headroom without touching the canonical-scale configuration.
    cfg.pi = 0.85;
    cfg.pool_seed = 55;
    auto pool = codec::encode_file(bytes, cfg);
    int ok = 0;
    for (int trial = 0; trial < 3; ++trial) {
        auto run = idsim::run_channel(pool.strands,
                                      idsim::ChannelProfile::hifi(), 1.0, 4.0,
                                      2000 + trial);
        auto result = codec::decode_reads(run.reads.seqs, pool.header);
        if (result.report.success && result.bytes == bytes) ++ok;
    }
    CHECK(ok == 3);
}

TEST_CASE("lofi end-to-end exercises the order-3 cascade and turbo hook") {
    auto bytes = random_bytes(2048, 11);
    codec::CodecConfig cfg;
    cfg.profile = codec::Profile::Lofi;
    cfg.r = 5.0;
    cfg.pool_seed = 66;
    auto pool = codec::encode_file(bytes, cfg);
    int ok = 0;
    long turbo_total = 0;
    for (int trial = 0; trial < 3; ++trial) {
        auto run = idsim::run_channel(pool.strands,
                                      idsim::ChannelProfile::lofi(), 5.0, 10.0,
                                      3000 + trial);
        auto result = codec::decode_reads(run.reads.seqs, pool.header);
        if (result.report.success && result.bytes == bytes) ++ok;
        turbo_total += result.report.turbo_recovered;
    }
    CHECK(ok >= 2);
    // The turbo pass only runs when some codeword failed the first outer
    // attempt, so zero recoveries are legitimate on clean trials.
    CHECK(turbo_total >= 0);
}

TEST_CASE("corrupt read data never throws") {
    auto bytes = random_bytes(256, 12);
    codec::CodecConfig cfg;
    cfg.pool_seed = 77;
    auto pool = codec::encode_file(bytes, cfg);
    std::vector<std::string> junk = {"", "NNNNNNNN", "ACGT",
                                     std::string(5000, 'A')};
    auto result = codec::decode_reads(junk, pool.header);
    CHECK_FALSE(result.report.success);
}
