#include <doctest.h>

#include <algorithm>
#include <random>

#include "mahoraga/gf16.hpp"
#include "mahoraga/gf2.hpp"
#include "oracles.hpp"

using mahoraga::gf::Gf16;
using mahoraga::gf2::BitMatrix;

TEST_CASE("gf16 multiplicative identity and small products") {
    const auto& f = Gf16::standard();
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        auto a = static_cast<std::uint16_t>(rng());
        CHECK(f.mul(a, 1) == a);
        CHECK(f.mul(a, 0) == 0);
    }
    CHECK(f.mul(2, 3) == 6);  // x * (x + 1), no reduction
}

TEST_CASE("gf16 generator has full order") {
    const auto& f = Gf16::standard();
    // alpha^65534 * alpha == 1 via a square-and-multiply oracle on the
    // carry-less multiplier.
    auto pow_slow = [&](std::uint16_t base, std::uint32_t e) {
        std::uint16_t acc = 1;
        std::uint16_t b = base;
        while (e) {
            if (e & 1) acc = Gf16::mul_slow(acc, b, Gf16::kDefaultPoly);
            b = Gf16::mul_slow(b, b, Gf16::kDefaultPoly);
            e >>= 1;
        }
        return acc;
    };
    std::uint16_t alpha = f.alpha_pow(1);
    CHECK(alpha == 2);
    CHECK(pow_slow(alpha, 65534) == f.alpha_pow(65534));
    CHECK(f.mul(f.alpha_pow(65534), alpha) == 1);
    CHECK(pow_slow(alpha, 65535) == 1);
}

TEST_CASE("gf16 table agrees with carry-less multiply") {
    const auto& f = Gf16::standard();
    // The antilog chain is the table; multiplying by alpha step by step must
    // match explicit reduction for every nonzero element.
    std::uint16_t x = 1;
    for (int i = 0; i < Gf16::kOrder; ++i) {
        CHECK(f.alpha_pow(i) == x);
        x = Gf16::mul_slow(x, 2, Gf16::kDefaultPoly);
    }
    CHECK(x == 1);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20000; ++i) {
        auto a = static_cast<std::uint16_t>(rng());
        auto b = static_cast<std::uint16_t>(rng());
        CHECK(f.mul(a, b) == Gf16::mul_slow(a, b, Gf16::kDefaultPoly));
    }
}

TEST_CASE("gf16 field axioms on random triples") {
    const auto& f = Gf16::standard();
    std::mt19937_64 rng(13);
    for (int i = 0; i < 10000; ++i) {
        auto a = static_cast<std::uint16_t>(rng());
        auto b = static_cast<std::uint16_t>(rng());
        auto c = static_cast<std::uint16_t>(rng());
        CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.mul(a, static_cast<std::uint16_t>(b ^ c)) ==
              (f.mul(a, b) ^ f.mul(a, c)));
    }
}

TEST_CASE("gf16 inverses") {
    const auto& f = Gf16::standard();
    CHECK(f.inv(1) == 1);
    CHECK_THROWS_AS(f.inv(0), std::domain_error);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        std::uint16_t a = 0;
        while (a == 0) a = static_cast<std::uint16_t>(rng());
        CHECK(f.mul(a, f.inv(a)) == 1);
    }
}

TEST_CASE("non-primitive polynomial is rejected") {
    // x^16 + 1 = (x + 1)^16 over GF(2).
    CHECK_THROWS_AS(Gf16(0x10001), std::invalid_argument);
}

namespace {

BitMatrix from_bool(const std::vector<std::vector<int>>& rows) {
    BitMatrix m(static_cast<int>(rows.size()),
                static_cast<int>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m.set(static_cast<int>(r), static_cast<int>(c), rows[r][c] != 0);
        }
    }
    return m;
}

}  // namespace

TEST_CASE("gf2 rank basics") {
    BitMatrix id(4, 4);
    for (int i = 0; i < 4; ++i) id.set(i, i, true);
    CHECK(id.rank() == 4);

    std::vector<std::vector<int>> rows = {
        {1, 0, 1, 0}, {0, 1, 1, 0}, {1, 0, 1, 0}};
    CHECK(from_bool(rows).rank() == 2);  // duplicated row
}

TEST_CASE("gf2 rank matches an independent elimination on sparse matrices") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<int>> rows(9, std::vector<int>(252, 0));
        for (auto& row : rows) {
            for (int k = 0; k < 28; ++k) row[rng() % 252] = 1;
        }
        BitMatrix m = from_bool(rows);
        CHECK(m.rank() == oracles::rank_bool(rows));

        // Invariance under row permutation.
        std::shuffle(rows.begin(), rows.end(), rng);
        CHECK(from_bool(rows).rank() == m.rank());
    }
}
