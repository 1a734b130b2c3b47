#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "leotdd/channel.hpp"
#include "leotdd/duplexing.hpp"
#include "leotdd/geometry.hpp"
#include "leotdd/sync.hpp"

namespace leotdd {

/// Invalid scenario input. `key()` names the offending config key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct ScenarioConfig {
    ConstellationGeometry geometry;
    LinkBudgetParams link;
    CsiAgingModel aging;
    GnssErrorModel gnss;
    SyncThresholds sync_thresholds;
    FrameScheme baseline = FrameScheme::fdd();
    std::vector<FrameScheme> schemes;
    double common_timing_offset_s = 0.0;
    std::size_t num_ues = 10000;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0 = hardware concurrency

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

/// The scheme set used when a config lists none: EFS at 182 ms, USG at 1 ms
/// and POU at 100/110/120/130 dB SIC.
std::vector<FrameScheme> default_schemes();

struct SchemeOutcome {
    double overlap_s = 0.0;
    double dl_time_fraction = 0.0;
    std::optional<double> ratio;  // empty for a degenerate FDD baseline
};

struct UeRecord {
    std::size_t ue_index = 0;
    UePlacement placement;
    SightLine sight;
    double snr_db = 0.0;
    double timing_residual_s = 0.0;
    double frequency_residual_hz = 0.0;
    std::vector<SchemeOutcome> outcomes;  // parallel to RunResult::schemes
};

struct SyncSummary {
    std::size_t draws = 0;
    double max_timing_residual_s = 0.0;
    double mean_timing_residual_s = 0.0;
    double max_frequency_residual_hz = 0.0;
    double timing_pass_fraction = 0.0;
    double frequency_pass_fraction = 0.0;
    SyncBudget worst_case;
    SyncReport worst_case_report;
};

struct RunResult {
    std::vector<FrameScheme> schemes;
    std::vector<UeRecord> records;
    SyncSummary sync;
};

/// Evaluates every UE drop under every scheme. Each UE draws from its own
/// stream keyed by (seed, ue_index), so the result is independent of the
/// thread count.
RunResult run(const ScenarioConfig& config);

UeRecord evaluate_ue(const ScenarioConfig& config, std::size_t ue_index);

SyncSummary summarize_sync(const ScenarioConfig& config, std::span<const UeRecord> records);

/// Sync-only pass over the same UE streams as run(); skips the duplexing
/// evaluation, so it scales to large draw counts.
SyncSummary run_sync(const ScenarioConfig& config);

struct CdfSeries {
    std::vector<double> values;         // distinct, ascending
    std::vector<double> probabilities;  // F(values[i])

    /// F(x) = #{v <= x} / n.
    double at(double x) const;
};

/// Throws std::invalid_argument on empty input.
CdfSeries empirical_cdf(std::span<const double> values);

/// Throws std::invalid_argument on empty input.
double fraction_above(std::span<const double> values, double threshold);

struct SchemeSummary {
    std::string id;
    std::string label;
    std::size_t count = 0;
    std::size_t degenerate = 0;
    double mean_ratio = 0.0;
    double median_ratio = 0.0;
    double fraction_above_one = 0.0;
};

/// Ratios of non-degenerate records for scheme `scheme_index`, in UE order.
std::vector<double> scheme_ratios(const RunResult& result, std::size_t scheme_index);

/// Throws std::runtime_error when a scheme has no usable record.
std::vector<SchemeSummary> summarize(const RunResult& result);

}  // namespace leotdd
