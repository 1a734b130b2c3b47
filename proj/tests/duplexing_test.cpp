#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "leotdd/duplexing.hpp"
#include "oracles.hpp"

using namespace leotdd;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SightLine sight_at_delay(double delay_s) {
    SightLine s;
    s.delay_s = delay_s;
    s.slant_range_km = delay_s * kSpeedOfLightKmPerS;
    return s;
}

LinkBudgetParams link_with_snr(double snr_db, double distance_km) {
    LinkBudgetParams p;
    p.eirp_density_dbw_per_mhz = 4.0;
    p.ue_g_over_t_db_per_k = 15.9;
    p.ue_noise_figure_db = 7.0;
    p.ue_tx_power_dbm = 56.0;
    p.eirp_density_dbw_per_mhz += snr_db - cnr(p, distance_km);
    return p;
}

CsiAgingModel aging(double spread_hz) {
    CsiAgingModel m;
    m.doppler_spread_hz = spread_hz;
    return m;
}

}  // namespace

TEST_CASE("guard period and timing advance") {
    CHECK(required_guard_period(6.443e-3) == doctest::Approx(12.886e-3));
    CHECK(required_guard_period(0.9e-6) == doctest::Approx(1.8e-6));
    CHECK(required_guard_period(0.0) == 0.0);
    CHECK(timing_advance(2.0014e-3) == doctest::Approx(4.0028e-3));
    CHECK(timing_advance(6.443e-3) == doctest::Approx(12.886e-3));
    CHECK(timing_advance(0.0) == 0.0);
}

TEST_CASE("UE overlap window") {
    const auto usg = FrameScheme::ue_specific_guard(1e-3);

    SUBCASE("advance that is a whole number of frames") {
        const auto w = ue_overlap_for_advance(3e-3, usg);
        CHECK(w.intervals.empty());
        CHECK(w.total_length == 0.0);
    }
    SUBCASE("far-edge UE") {
        const auto w = ue_overlap(6.443e-3, usg);
        REQUIRE(w.intervals.size() == 1);
        CHECK(w.intervals[0].start == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(w.intervals[0].end == doctest::Approx(0.114e-3).epsilon(1e-9));
        CHECK(w.total_length == doctest::Approx(0.114e-3).epsilon(1e-9));
        CHECK(w.total_length == doctest::Approx(oracle::overlap_ticks(12.886e-3, 0.7, 1e-3, 100000)).epsilon(1e-4));
    }
    SUBCASE("near-nadir UE") {
        const auto w = ue_overlap(2.0014e-3, usg);
        REQUIRE(w.intervals.size() == 1);
        CHECK(w.intervals[0].start == doctest::Approx(0.6972e-3).epsilon(1e-9));
        CHECK(w.intervals[0].end == doctest::Approx(0.7e-3).epsilon(1e-12));
        CHECK(w.total_length == doctest::Approx(0.0028e-3).epsilon(1e-6));
    }
    SUBCASE("two disjoint pieces when the DL share is small") {
        auto s = usg;
        s.dl_fraction = 0.3;
        // UL span [0.3-0.1, 1-0.1) = [0.2, 0.9) ms meets DL [0, 0.3) once; shift 0.75 wraps it
        const auto w = ue_overlap_for_advance(0.75e-3, s);
        CHECK(w.total_length == doctest::Approx(oracle::overlap_ticks(0.75e-3, 0.3, 1e-3, 100000)).epsilon(1e-4));
        for (std::size_t i = 1; i < w.intervals.size(); ++i) CHECK(w.intervals[i - 1].end <= w.intervals[i].start);
    }
    CHECK(ue_overlap(6.443e-3, FrameScheme::extended_frame()).total_length == 0.0);
}

TEST_CASE("overlap matches tick oracle for random geometry") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        auto s = FrameScheme::partial_overlap(120.0, 0.5e-3 + 2e-3 * u(rng));
        s.dl_fraction = 0.05 + 0.9 * u(rng);
        const double advance = 20e-3 * u(rng);
        const auto w = ue_overlap_for_advance(advance, s);
        const double ref = oracle::overlap_ticks(advance, s.dl_fraction, s.frame_length_s, 20000);
        REQUIRE(std::abs(w.total_length - ref) <= 2.0 * s.frame_length_s / 20000);
        REQUIRE(w.total_length <= std::min(s.dl_fraction, 1 - s.dl_fraction) * s.frame_length_s + 1e-15);
    }
}

TEST_CASE("overlap has period T/2 in delay") {
    const auto s = FrameScheme::ue_specific_guard(1e-3);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> delay(2e-3, 6.5e-3);
    for (int i = 0; i < 500; ++i) {
        const double d = delay(rng);
        REQUIRE(ue_overlap(d, s).total_length ==
                doctest::Approx(ue_overlap(d + 0.5e-3, s).total_length).epsilon(1e-9).scale(1e-3));
    }
}

TEST_CASE("resource shares") {
    const auto fdd = resource_share(FrameScheme::fdd(), 4e-3);
    CHECK(fdd.bandwidth_fraction == doctest::Approx(0.665));
    CHECK(fdd.dl_time_fraction == 1.0);
    CHECK(fdd.overlap_fraction == 0.0);

    const auto efs = resource_share(FrameScheme::extended_frame(), 4e-3);
    CHECK(efs.bandwidth_fraction == 1.0);
    CHECK(efs.dl_time_fraction == doctest::Approx(0.65));

    const auto pou = resource_share(FrameScheme::partial_overlap(130.0), 6.443e-3);
    CHECK(pou.dl_time_fraction == doctest::Approx(0.7));
    CHECK(pou.overlap_fraction == doctest::Approx(0.114).epsilon(1e-6));

    const auto usg = resource_share(FrameScheme::ue_specific_guard(), 6.443e-3);
    CHECK(usg.dl_time_fraction == doctest::Approx(0.7 * (1 - 0.114)).epsilon(1e-6));

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> delay(0.0, 10e-3);
    for (const auto& s : {FrameScheme::fdd(), FrameScheme::extended_frame(), FrameScheme::ue_specific_guard(),
                          FrameScheme::partial_overlap(100.0)}) {
        for (int i = 0; i < 200; ++i) {
            const auto r = resource_share(s, delay(rng));
            REQUIRE(r.bandwidth_fraction >= 0.0);
            REQUIRE(r.bandwidth_fraction <= 1.0);
            REQUIRE(r.dl_time_fraction >= 0.0);
            REQUIRE(r.dl_time_fraction <= 1.0);
            REQUIRE(r.overlap_fraction >= 0.0);
            REQUIRE(r.overlap_fraction <= r.dl_time_fraction);
        }
    }
}

TEST_CASE("throughput density") {
    SUBCASE("aging off with no overlap reduces to resource fractions") {
        const auto sight = sight_at_delay(2.5e-3);  // advance 5 ms = 5 whole frames
        const auto link = link_with_snr(10.0, sight.slant_range_km);
        const double se = spectral_efficiency(10.0);
        const auto pou = FrameScheme::partial_overlap(kInf);
        CHECK(dl_throughput_density(pou, sight, link, aging(0.0)) == doctest::Approx(0.7 * se));
        CHECK(dl_throughput_density(FrameScheme::fdd(), sight, link, aging(0.0)) == doctest::Approx(0.665 * se));
        CHECK(*efficiency_ratio(pou, sight, link, aging(0.0)) == doctest::Approx(0.7 / 0.665).epsilon(1e-12));
    }
    SUBCASE("extended frame against fine quadrature") {
        const auto sight = sight_at_delay(4e-3);
        const auto link = link_with_snr(10.0, sight.slant_range_km);
        const double ref = 0.65 * oracle::aged_se_reference(10.0, 10.0, 4e-3, 0.65 * 182e-3);
        CHECK(ref == doctest::Approx(0.217336).epsilon(1e-5));
        CHECK(dl_throughput_density(FrameScheme::extended_frame(), sight, link, aging(10.0)) ==
              doctest::Approx(ref).epsilon(5e-3));
    }
    SUBCASE("USG charges the overlap against DL time") {
        const auto sight = sight_at_delay(6.443e-3);
        const auto link = link_with_snr(10.0, sight.slant_range_km);
        const double se = spectral_efficiency(10.0);
        CHECK(dl_throughput_density(FrameScheme::ue_specific_guard(), sight, link, aging(0.0)) ==
              doctest::Approx(0.7 * (1 - 0.114) * se).epsilon(1e-6));
    }
    SUBCASE("FDD back-off hook lowers the baseline") {
        const auto sight = sight_at_delay(3e-3);
        const auto link = link_with_snr(10.0, sight.slant_range_km);
        auto fdd = FrameScheme::fdd();
        const double plain = dl_throughput_density(fdd, sight, link, aging(9.0));
        fdd.fdd_csi_backoff_db = 1.0;
        CHECK(dl_throughput_density(fdd, sight, link, aging(9.0)) < plain);
    }
}

TEST_CASE("efficiency ratio") {
    const auto sight = sight_at_delay(6.443e-3);
    const auto link = link_with_snr(4.31, sight.slant_range_km);

    const auto usg = FrameScheme::ue_specific_guard();
    CHECK(*efficiency_ratio(usg, usg, sight, link, aging(9.0), timing_advance(sight.delay_s)) == doctest::Approx(1.0));

    // chain of module formulas evaluated with the independent oracles
    const double snr = db_to_linear(4.31);
    const double overlap = 0.114e-3;
    const double usg_density =
        0.7 * (1 - overlap / 1e-3) * oracle::aged_se_reference(snr, 9.0, 6.443e-3, 0.7e-3 - 0.7 * overlap, 20000);
    const double fdd_density = 0.665 * oracle::aged_se_reference(snr, 9.0, 2 * 6.443e-3, 1e-3, 20000);
    CHECK(*efficiency_ratio(usg, sight, link, aging(9.0)) == doctest::Approx(usg_density / fdd_density).epsilon(1e-4));

    CHECK_THROWS(efficiency_ratio(FrameScheme::fdd(), sight, link, aging(9.0)));

    auto far = sight;
    far.slant_range_km = 1e9;  // SNR far below -30 dB
    CHECK_FALSE(efficiency_ratio(usg, far, link, aging(9.0)).has_value());
}

TEST_CASE("scheme ordering properties per UE") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> delay(2.0e-3, 6.44e-3);
    std::uniform_real_distribution<double> snr_db(4.0, 15.0);
    for (int i = 0; i < 300; ++i) {
        const auto sight = sight_at_delay(delay(rng));
        const auto link = link_with_snr(snr_db(rng), sight.slant_range_km);
        const auto m = aging(9.0);

        double prev = 0.0;
        for (double sic = 60.0; sic <= 180.0; sic += 10.0) {
            const double r = *efficiency_ratio(FrameScheme::partial_overlap(sic), sight, link, m);
            REQUIRE(r >= prev - 1e-12);
            prev = r;
        }
        const double pou_inf = *efficiency_ratio(FrameScheme::partial_overlap(kInf), sight, link, m);
        const double usg = *efficiency_ratio(FrameScheme::ue_specific_guard(), sight, link, m);
        const double efs = *efficiency_ratio(FrameScheme::extended_frame(), sight, link, m);
        REQUIRE(pou_inf >= usg - 1e-12);
        REQUIRE(efs <= usg);

        REQUIRE(*efficiency_ratio(FrameScheme::partial_overlap(kInf), sight, link, aging(0.0)) ==
                doctest::Approx(0.7 / 0.665).epsilon(1e-12));
    }
}

TEST_CASE("scheme identifiers") {
    CHECK(FrameScheme::partial_overlap(130.0).id() == "tdd_pou_130db");
    CHECK(FrameScheme::partial_overlap(130.0).label() == "TDD-POU(130 dB)");
    CHECK(FrameScheme::extended_frame().id() == "tdd_efs");
    CHECK(FrameScheme::ue_specific_guard().label() == "TDD-USG");
    auto bad = FrameScheme::ue_specific_guard();
    bad.dl_fraction = 1.4;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
