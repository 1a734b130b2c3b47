#include "leotdd/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

namespace leotdd {

namespace {

void require(bool ok, const char* key, const char* what) {
    if (!ok) throw ConfigError(key, what);
}

std::mt19937_64 ue_stream(std::uint64_t seed, std::size_t ue_index) {
    const auto idx = static_cast<std::uint64_t>(ue_index);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

void ScenarioConfig::validate() const {
    const auto& g = geometry;
    require(g.earth_radius_km > 0.0, "geometry.earth_radius_km", "must be positive");
    require(g.gravitational_parameter > 0.0, "geometry.gravitational_parameter", "must be positive");
    require(g.altitude_km > 0.0, "geometry.altitude_km", "must be positive");
    require(g.min_elevation_rad > 0.0 && g.min_elevation_rad <= kPi / 2.0 + 1e-12, "geometry.min_elevation_deg",
            "must lie in (0, 90]");

    require(link.carrier_hz > 0.0, "channel.carrier_ghz", "must be positive");
    require(link.bandwidth_hz > 0.0, "channel.bandwidth_mhz", "must be positive");
    require(link.ue_noise_figure_db >= 0.0, "channel.ue_noise_figure_db", "must be nonnegative");
    require(std::isfinite(link.ue_tx_power_dbm), "channel.ue_tx_power_dbm", "must be finite");
    require(std::isfinite(link.eirp_density_dbw_per_mhz), "channel.eirp_density_dbw_per_mhz", "must be finite");
    require(std::isfinite(link.ue_g_over_t_db_per_k), "channel.ue_g_over_t_db_per_k", "must be finite");
    require(aging.doppler_spread_hz >= 0.0 && std::isfinite(aging.doppler_spread_hz), "channel.doppler_spread_hz",
            "must be finite and nonnegative");
    require(aging.integration_steps >= 2, "channel.integration_steps", "must be at least 2");

    require(gnss.timing_error_bound_s >= 0.0, "sync.timing_error_bound_us", "must be nonnegative");
    require(gnss.frequency_error_bound_ppm >= 0.0, "sync.frequency_error_bound_ppm", "must be nonnegative");
    require(sync_thresholds.timing_s > 0.0, "sync.timing_threshold_us", "must be positive");
    require(sync_thresholds.frequency_ppm > 0.0, "sync.frequency_threshold_ppm", "must be positive");

    require(!schemes.empty(), "duplexing.schemes", "must list at least one scheme");
    auto check_scheme = [](const FrameScheme& s) {
        require(s.dl_fraction > 0.0 && s.dl_fraction < 1.0, "duplexing.dl_fraction", "must lie in (0, 1)");
        require(s.frame_length_s > 0.0,
                s.kind == SchemeKind::TddEfs ? "duplexing.efs_frame_length_ms" : "duplexing.frame_length_ms",
                "must be positive");
        require(s.guard_slot_fraction >= 0.0 && s.guard_slot_fraction < 1.0, "duplexing.guard_slot_fraction",
                "must lie in [0, 1)");
        require(s.fdd_guard_band_fraction >= 0.0 && s.fdd_guard_band_fraction < 1.0,
                "duplexing.fdd_guard_band_fraction", "must lie in [0, 1)");
        require(s.sic_db >= 0.0, "duplexing.sic_db", "must be nonnegative");
    };
    check_scheme(baseline);
    for (const auto& s : schemes) check_scheme(s);
    require(baseline.kind == SchemeKind::Fdd, "duplexing.schemes", "baseline must be FDD");
    require(std::none_of(schemes.begin(), schemes.end(), [](const FrameScheme& s) { return s.kind == SchemeKind::Fdd; }),
            "duplexing.schemes", "FDD is the baseline and cannot be listed");
    require(std::isfinite(common_timing_offset_s), "duplexing.common_timing_offset_ms", "must be finite");
    require(num_ues >= 1, "experiment.num_ues", "must be at least 1");
}

std::vector<FrameScheme> default_schemes() {
    std::vector<FrameScheme> out{FrameScheme::extended_frame(182e-3), FrameScheme::ue_specific_guard(1e-3)};
    for (double sic : {100.0, 110.0, 120.0, 130.0}) out.push_back(FrameScheme::partial_overlap(sic, 1e-3));
    return out;
}

UeRecord evaluate_ue(const ScenarioConfig& config, std::size_t ue_index) {
    auto rng = ue_stream(config.seed, ue_index);
    UeRecord rec;
    rec.ue_index = ue_index;
    rec.placement = sample_ue(rng, config.geometry);
    rec.sight = sight_line(config.geometry, rec.placement, config.link.carrier_hz);
    rec.snr_db = cnr(config.link, rec.sight.slant_range_km);

    const auto ta = estimate_timing_advance(config.geometry, rec.placement, config.gnss, rng);
    rec.timing_residual_s = ta.residual_s;
    rec.frequency_residual_hz =
        doppler_precompensation(config.geometry, rec.placement, config.link.carrier_hz, config.gnss, rng);
    const double advance = ta.estimate_s - config.common_timing_offset_s;

    const double fdd = dl_throughput_density(config.baseline, rec.sight, config.link, config.aging, advance);
    rec.outcomes.reserve(config.schemes.size());
    for (const auto& scheme : config.schemes) {
        SchemeOutcome o;
        const auto overlap = ue_overlap_for_advance(advance, scheme);
        o.overlap_s = overlap.total_length;
        o.dl_time_fraction = resource_share(scheme, overlap).dl_time_fraction;
        if (fdd > 0.0) o.ratio = dl_throughput_density(scheme, rec.sight, config.link, config.aging, advance) / fdd;
        rec.outcomes.push_back(o);
    }
    return rec;
}

SyncSummary summarize_sync(const ScenarioConfig& config, std::span<const UeRecord> records) {
    SyncSummary s;
    s.draws = records.size();
    const double freq_threshold_hz = config.sync_thresholds.frequency_ppm * 1e-6 * config.link.carrier_hz;
    std::size_t timing_ok = 0;
    std::size_t freq_ok = 0;
    double timing_sum = 0.0;
    for (const auto& r : records) {
        s.max_timing_residual_s = std::max(s.max_timing_residual_s, r.timing_residual_s);
        s.max_frequency_residual_hz = std::max(s.max_frequency_residual_hz, r.frequency_residual_hz);
        timing_sum += r.timing_residual_s;
        if (r.timing_residual_s <= config.sync_thresholds.timing_s) ++timing_ok;
        if (r.frequency_residual_hz <= freq_threshold_hz) ++freq_ok;
    }
    if (!records.empty()) {
        const auto n = static_cast<double>(records.size());
        s.mean_timing_residual_s = timing_sum / n;
        s.timing_pass_fraction = static_cast<double>(timing_ok) / n;
        s.frequency_pass_fraction = static_cast<double>(freq_ok) / n;
    }
    s.worst_case = make_budget(s.max_timing_residual_s, s.max_frequency_residual_hz, config.sync_thresholds,
                               config.link.carrier_hz);
    s.worst_case_report = check_requirements(s.worst_case);
    return s;
}

SyncSummary run_sync(const ScenarioConfig& config) {
    config.validate();
    std::vector<UeRecord> records(config.num_ues);
    for (std::size_t i = 0; i < config.num_ues; ++i) {
        auto rng = ue_stream(config.seed, i);
        auto& rec = records[i];
        rec.ue_index = i;
        rec.placement = sample_ue(rng, config.geometry);
        rec.timing_residual_s = estimate_timing_advance(config.geometry, rec.placement, config.gnss, rng).residual_s;
        rec.frequency_residual_hz =
            doppler_precompensation(config.geometry, rec.placement, config.link.carrier_hz, config.gnss, rng);
    }
    return summarize_sync(config, records);
}

RunResult run(const ScenarioConfig& config) {
    config.validate();
    RunResult result;
    result.schemes = config.schemes;
    result.records.resize(config.num_ues);

    unsigned workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, config.num_ues));
    const std::size_t chunk = (config.num_ues + workers - 1) / workers;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(config.num_ues, begin + chunk);
            pool.emplace_back([&config, &result, begin, end] {
                for (std::size_t i = begin; i < end; ++i) result.records[i] = evaluate_ue(config, i);
            });
        }
    }
    result.sync = summarize_sync(config, result.records);
    return result;
}

double CdfSeries::at(double x) const {
    const auto it = std::upper_bound(values.begin(), values.end(), x);
    if (it == values.begin()) return 0.0;
    return probabilities[static_cast<std::size_t>(it - values.begin()) - 1];
}

CdfSeries empirical_cdf(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("empirical_cdf of an empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    CdfSeries cdf;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        cdf.values.push_back(sorted[i]);
        cdf.probabilities.push_back(static_cast<double>(i + 1) / n);
    }
    return cdf;
}

double fraction_above(std::span<const double> values, double threshold) {
    if (values.empty()) throw std::invalid_argument("fraction_above of an empty sample");
    const auto above = std::count_if(values.begin(), values.end(), [=](double v) { return v > threshold; });
    return static_cast<double>(above) / static_cast<double>(values.size());
}

std::vector<double> scheme_ratios(const RunResult& result, std::size_t scheme_index) {
    std::vector<double> out;
    out.reserve(result.records.size());
    for (const auto& r : result.records) {
        const auto& ratio = r.outcomes.at(scheme_index).ratio;
        if (ratio) out.push_back(*ratio);
    }
    return out;
}

std::vector<SchemeSummary> summarize(const RunResult& result) {
    if (result.records.empty()) throw std::runtime_error("summarize: no records");
    std::vector<SchemeSummary> out;
    for (std::size_t k = 0; k < result.schemes.size(); ++k) {
        SchemeSummary s;
        s.id = result.schemes[k].id();
        s.label = result.schemes[k].label();
        auto ratios = scheme_ratios(result, k);
        s.count = ratios.size();
        s.degenerate = result.records.size() - ratios.size();
        if (ratios.empty()) throw std::runtime_error("summarize: every record is degenerate for " + s.id);

        s.mean_ratio = std::accumulate(ratios.begin(), ratios.end(), 0.0) / static_cast<double>(ratios.size());
        s.fraction_above_one = fraction_above(ratios, 1.0);
        std::sort(ratios.begin(), ratios.end());
        const std::size_t mid = ratios.size() / 2;
        s.median_ratio = ratios.size() % 2 == 1 ? ratios[mid] : 0.5 * (ratios[mid - 1] + ratios[mid]);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace leotdd
