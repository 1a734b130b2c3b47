#include <cmath>
#include <random>

#include "doctest.h"
#include "leotdd/duplexing.hpp"
#include "leotdd/sync.hpp"

using namespace leotdd;

namespace {

ConstellationGeometry leo600() { return {}; }

}  // namespace

TEST_CASE("timing advance estimate") {
    const auto g = leo600();
    std::mt19937_64 rng(1);

    GnssErrorModel exact;
    exact.timing_error_bound_s = 0.0;
    const UePlacement ue{0.1, 0.3};
    const auto est = estimate_timing_advance(g, ue, exact, rng);
    CHECK(est.residual_s == 0.0);
    CHECK(est.estimate_s == doctest::Approx(timing_advance(propagation_delay(slant_range_from_central_angle(g, 0.1)))));

    const GnssErrorModel gnss;
    constexpr int kDraws = 100000;
    double max_residual = 0.0;
    double sum = 0.0;
    for (int i = 0; i < kDraws; ++i) {
        const auto e = estimate_timing_advance(g, sample_ue(rng, g), gnss, rng);
        max_residual = std::max(max_residual, e.residual_s);
        sum += e.residual_s;
        REQUIRE(e.residual_s <= 3e-6);
    }
    CHECK(max_residual <= 0.13e-6);
    // |U(-b, b)| is U(0, b): mean b/2, sd b/sqrt(12)
    const double sigma_mean = 0.13e-6 / std::sqrt(12.0) / std::sqrt(static_cast<double>(kDraws));
    CHECK(std::abs(sum / kDraws - 0.065e-6) < 3 * sigma_mean);
}

TEST_CASE("Doppler pre-compensation residual") {
    const auto g = leo600();
    std::mt19937_64 rng(2);

    GnssErrorModel exact;
    exact.frequency_error_bound_ppm = 0.0;
    CHECK(doppler_precompensation(g, {0.2, 0.0}, 20e9, exact, rng) == 0.0);

    const GnssErrorModel gnss;
    double max20 = 0.0, max30 = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const auto ue = sample_ue(rng, g);
        max20 = std::max(max20, doppler_precompensation(g, ue, 20e9, gnss, rng));
        max30 = std::max(max30, doppler_precompensation(g, ue, 30e9, gnss, rng));
    }
    CHECK(max20 <= 2e3 * (1 + 1e-12));
    CHECK(max30 <= 3e3 * (1 + 1e-12));
    CHECK(max20 > 1.9e3);

    CHECK_THROWS(doppler_precompensation(g, {0.2, 0.0}, 0.0, gnss, rng));
}

TEST_CASE("truncated Gaussian errors respect the bound") {
    std::mt19937_64 rng(3);
    double sum_sq = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double e = draw_bounded_error(rng, 1.0, ErrorDistribution::TruncatedGaussian);
        REQUIRE(std::abs(e) <= 1.0);
        sum_sq += e * e;
    }
    // sigma = bound / 3 before truncation
    CHECK(std::sqrt(sum_sq / 20000) == doctest::Approx(1.0 / 3.0).epsilon(0.05));
}

TEST_CASE("requirement check") {
    const SyncThresholds thresholds;  // 3 us, 0.05 ppm
    const auto zero = check_requirements(make_budget(0.0, 0.0, thresholds, 20e9));
    CHECK(zero.pass());
    CHECK(zero.timing_margin_s == doctest::Approx(3e-6));
    CHECK(zero.frequency_margin_hz == doctest::Approx(1e3));

    const auto gnss = check_requirements(make_budget(0.13e-6, 2e3, thresholds, 20e9));
    CHECK(gnss.timing_pass);
    CHECK_FALSE(gnss.frequency_pass);
    CHECK_FALSE(gnss.pass());

    const auto edge = check_requirements({3e-6, 1e3, 3e-6, 1e3});
    CHECK(edge.timing_pass);
    CHECK(edge.frequency_pass);

    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const SyncBudget b{6e-6 * u(rng), 2e3 * u(rng), 3e-6, 1e3};
        const auto r = check_requirements(b);
        auto smaller = b;
        smaller.residual_timing_s *= u(rng);
        smaller.residual_frequency_hz *= u(rng);
        const auto r2 = check_requirements(smaller);
        REQUIRE((!r.timing_pass || r2.timing_pass));
        REQUIRE((!r.frequency_pass || r2.frequency_pass));
    }
}

TEST_CASE("random access window") {
    CHECK(random_access_window(leo600()) * 1e3 == doctest::Approx(4.44).epsilon(5e-3));
    ConstellationGeometry nadir;
    nadir.min_elevation_rad = kPi / 2;
    CHECK(random_access_window(nadir) == doctest::Approx(0.0).epsilon(1e-15));
    ConstellationGeometry high;
    high.altitude_km = 1200;
    CHECK(random_access_window(high) == doctest::Approx(differential_delay(high)));
    CHECK(random_access_window(high) * 1e3 == doctest::Approx(6.44093).epsilon(1e-5));
}
