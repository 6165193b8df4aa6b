#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mahoraga/analytics.hpp"

using namespace mahoraga::analytics;

TEST_CASE("density formula reproduces the published cells") {
    CHECK(density_eb_per_g(19456, 4508, 126, 0.2) ==
          doctest::Approx(155.8).epsilon(0.0004));
    CHECK(density_eb_per_g(19456, 2077, 126, 0.5) ==
          doctest::Approx(135.2).epsilon(0.001));
    CHECK(density_eb_per_g(19456, 823, 126, 5.0) ==
          doctest::Approx(34.1).epsilon(0.002));

    double base = density_eb_per_g(19456, 4508, 126, 0.2);
    CHECK(density_eb_per_g(19456, 4508, 126, 0.4) ==
          doctest::Approx(base / 2).epsilon(1e-12));
    CHECK_THROWS_AS(density_eb_per_g(1, 0, 126, 1), std::domain_error);
}

TEST_CASE("alphabet ceiling matches the published column") {
    CHECK(alphabet_ceiling(0.02) == doctest::Approx(225.1).epsilon(0.0005));
    CHECK(alphabet_ceiling(1.0) == doctest::Approx(143.7).epsilon(0.0005));
    CHECK(alphabet_ceiling(5.0) == doctest::Approx(45.2).epsilon(0.002));
    CHECK(alphabet_ceiling(10.0) == doctest::Approx(22.7).epsilon(0.002));
    CHECK(alphabet_ceiling(0.5) == doctest::Approx(178.9).epsilon(0.0005));
    CHECK(alphabet_ceiling(1e-9) == doctest::Approx(227.4).epsilon(0.0005));
    CHECK_THROWS_AS(alphabet_ceiling(0.0), std::domain_error);
}

TEST_CASE("qinv agrees with a bisection oracle") {
    auto q_of = [](double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); };
    for (double eps : {0.4, 0.1, 1e-2, 1e-4, 1e-6, 1e-9, 1e-12}) {
        double lo = -10.0, hi = 40.0;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (q_of(mid) > eps ? lo : hi) = mid;
        }
        double oracle = 0.5 * (lo + hi);
        CHECK(std::abs(qinv(eps) - oracle) < 1e-8);
    }
    CHECK_THROWS_AS(qinv(0.0), std::domain_error);
}

TEST_CASE("finite-blocklength rates reproduce the published pairs") {
    auto hifi = fbl_rate(1.3e-3, 252, 1e-6);
    CHECK(hifi.rate == doctest::Approx(0.898).epsilon(0.0023));
    CHECK(hifi.capacity == doctest::Approx(0.986).epsilon(0.0011));

    auto lofi = fbl_rate(8e-3, 252, 1e-6);
    CHECK(lofi.rate == doctest::Approx(0.763).epsilon(0.0027));
    CHECK(lofi.capacity == doctest::Approx(0.933).epsilon(0.0011));

    auto clean = fbl_rate(0.0, 252, 1e-6);
    CHECK(clean.rate == 1.0);
    CHECK(clean.capacity == 1.0);
}

TEST_CASE("fbl rate is monotone in noise and blocklength") {
    double prev = 1.0;
    for (double p : {1e-4, 1e-3, 4e-3, 1e-2, 3e-2, 0.1}) {
        double r = fbl_rate(p, 252, 1e-6).rate;
        CHECK(r < prev);
        prev = r;
    }
    prev = 0.0;
    for (double n : {64.0, 128.0, 252.0, 512.0, 2048.0}) {
        double r = fbl_rate(8e-3, n, 1e-6).rate;
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("efficiency decomposition") {
    auto hifi = decomposition(false, 0.680);
    CHECK(hifi.eta_code == doctest::Approx(0.764).epsilon(0.0027));
    CHECK(hifi.eta_ch == doctest::Approx(0.98).epsilon(0.021));

    auto lofi = decomposition(true, 0.515);
    CHECK(lofi.eta_code == doctest::Approx(0.647).epsilon(0.0031));

    // achieved = eta_code * eta_fbl makes the residual exactly one.
    auto unit = decomposition(false, 0.0);
    auto exact = decomposition(false, unit.eta_code * unit.eta_fbl);
    CHECK(exact.eta_ch == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("longevity model calibration and inversion") {
    auto model = LongevityModel::calibrated();
    CHECK(model.years_to_reach(5.0, 3.25) == doctest::Approx(133.0).epsilon(1e-9));
    CHECK(model.years_to_reach(10.0, 4.0) == doctest::Approx(282.9).epsilon(0.03));

    // Round trip. effective_r and years_to_reach are inverses.
    for (double years : {1.0, 50.0, 400.0}) {
        double r_t = model.effective_r(7.0, years);
        CHECK(model.years_to_reach(7.0, r_t) ==
              doctest::Approx(years).epsilon(1e-9));
    }

    CHECK(model.years_to_reach(5.0, 5.0 - 1e-12) ==
          doctest::Approx(0.0).epsilon(1e-6));
    CHECK_THROWS_AS(model.years_to_reach(5.0, 5.0), std::domain_error);
    CHECK_THROWS_AS(model.years_to_reach(5.0, 6.0), std::domain_error);

    // Both published rows are consistent with one rate constant within 3%.
    double l1 = std::log(5.0 / 3.25) / 133.0;
    double l2 = std::log(10.0 / 4.0) / 282.0;
    CHECK(std::abs(l1 - l2) / l1 < 0.03);
}

TEST_CASE("chemistry-chain longevity model is exposed but not calibrated") {
    auto chem = LongevityModel::from_chemistry(4e-9, 343.15, 1.27e5, 300.0, 70.0);
    CHECK(chem.lambda_per_year > 0.0);
    CHECK(chem.years_to_reach(5.0, 3.25) > 0.0);
}
