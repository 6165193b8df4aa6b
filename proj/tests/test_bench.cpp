#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "mahoraga/analytics.hpp"
#include "mahoraga/bench.hpp"
#include "mahoraga/digest.hpp"
#include "mahoraga/idsim.hpp"

using namespace mahoraga;

TEST_CASE("deterministic input generation") {
    auto a = bench::make_input(19456, 42);
    auto b = bench::make_input(19456, 42);
    auto c = bench::make_input(19456, 43);
    CHECK(a.size() == 19456);
    CHECK(digest::md5_hex(a) == digest::md5_hex(b));
    CHECK(digest::md5_hex(a) != digest::md5_hex(c));
}

TEST_CASE("zero-noise channel cells always succeed") {
    idsim::ChannelProfile quiet{"quiet", {0, 0, 0}, {0, 0, 0}, 0.0};
    auto input = bench::make_input(1024, 1);
    // Depth high enough that sampling dropout stays inside parity capacity.
    bench::Cell cell{codec::Profile::Hifi, 5.0, 10.0, 126, {}, {}};
    auto result =
        bench::run_cell(cell, 3, 7, input, par::default_exec(), &quiet);
    CHECK(result.successes == 3);
    REQUIRE(result.density.has_value());
    CHECK(*result.density ==
          doctest::Approx(analytics::density_eb_per_g(1024, result.n, 126, 5.0)));
}

TEST_CASE("cells sized beyond parity capacity always fail") {
    auto input = bench::make_input(1024, 2);
    // No outer parity at all, at a redundancy with substantial dropout.
    bench::Cell cell{codec::Profile::Hifi, 0.2, 2.0, 126, 0.0, {}};
    auto result = bench::run_cell(cell, 2, 11, input);
    CHECK(result.successes == 0);
    CHECK_FALSE(result.density.has_value());
}

TEST_CASE("run_cell is deterministic") {
    idsim::ChannelProfile quiet{"quiet", {0, 0, 0}, {0, 0, 0}, 0.0};
    auto input = bench::make_input(512, 3);
    bench::Cell cell{codec::Profile::Hifi, 2.0, 2.0, 126, {}, {}};
    auto a = bench::run_cell(cell, 2, 13, input, par::default_exec(), &quiet);
    auto b = bench::run_cell(cell, 2, 13, input, par::default_exec(), &quiet);
    CHECK(a.successes == b.successes);
    CHECK(a.n == b.n);
    CHECK(a.density.has_value() == b.density.has_value());
}

TEST_CASE("auto parity fraction at hifi r=1 matches the published value") {
    codec::CodecConfig cfg;
    cfg.r = 1.0;
    auto [k, n] = codec::pool_size(19456, cfg);
    double fraction = static_cast<double>(n - k) / n;
    CHECK(fraction == doctest::Approx(0.4261).epsilon(0.05));
    CHECK(std::abs(fraction - 0.4261) <= 0.02);
}

TEST_CASE("campaign reports serialize and flatten") {
    bench::CampaignResult empty;
    empty.kind = bench::CampaignKind::Native;
    empty.trials = 0;
    empty.seed_base = 5;
    empty.input_md5 = "d41d8cd98f00b204e9800998ecf8427e";
    auto json_text = bench::campaign_to_json(empty);
    auto parsed = nlohmann::json::parse(json_text);
    CHECK(parsed["campaign"] == "native");
    CHECK(parsed["cells"].is_array());
    CHECK(parsed["cells"].empty());

    bench::CellResult cr;
    cr.cell = {codec::Profile::Hifi, 0.5, 2.0, 126, {}, {}};
    cr.n = 2077;
    cr.k_rs = 749;
    cr.successes = 30;
    cr.trials = 30;
    cr.density = 135.25;
    cr.mean_runtime_s = 1.5;
    empty.cells.push_back(cr);
    bench::CellResult failed = cr;
    failed.successes = 7;
    failed.density.reset();
    failed.cell.r_channel = 3.0;
    empty.cells.push_back(failed);

    auto dir = std::filesystem::temp_directory_path() / "mahoraga_bench_test";
    std::filesystem::remove_all(dir);
    bench::write_campaign_report(empty, dir.string());
    auto path = dir / "native.json";
    REQUIRE(std::filesystem::exists(path));

    std::ifstream in(path);
    nlohmann::json round;
    in >> round;
    CHECK(round["cells"].size() == 2);
    CHECK(round["cells"][0]["density"].get<double>() ==
          doctest::Approx(135.25));
    CHECK(round["cells"][1]["density"].is_null());

    auto csv_path = dir / "flat.csv";
    bench::csv_from_reports({path.string()}, csv_path.string());
    std::ifstream csv(csv_path);
    int lines = 0;
    std::string line;
    while (std::getline(csv, line)) ++lines;
    CHECK(lines == 3);  // header + 2 cells

    std::filesystem::remove_all(dir);
}

TEST_CASE("campaign names round trip") {
    for (auto kind :
         {bench::CampaignKind::Native, bench::CampaignKind::Matched,
          bench::CampaignKind::Longevity, bench::CampaignKind::Length}) {
        CHECK(bench::campaign_from_name(bench::campaign_name(kind)) == kind);
    }
    CHECK_THROWS_AS(bench::campaign_from_name("nope"), std::invalid_argument);
}
