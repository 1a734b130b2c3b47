#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "leotdd/experiment.hpp"

namespace leotdd {

/// Thrown when an output artifact cannot be written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Six significant digits, '.' separator.
std::string format_number(double v);

/// records.csv: one row per UE, then `<scheme>_overlap_ms`, `<scheme>_ratio`
/// per scheme. Degenerate ratios are written as "nan".
void write_records_csv(std::ostream& out, const RunResult& result);

/// cdf.csv: scheme, ratio, cumulative_probability.
void write_cdf_csv(std::ostream& out, const RunResult& result);

/// Per-scheme statistics plus the sync report, as JSON text.
std::string summary_json(const ScenarioConfig& config, const RunResult& result,
                         const std::vector<SchemeSummary>& stats);

struct SweepRow {
    std::string key;
    std::string value;
    std::vector<SchemeSummary> stats;
};

/// sweep.csv: key, value, scheme, mean_ratio, median_ratio, fraction_above_one, degenerate_count.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Headline geometry figures printed by `leotdd geom`.
struct GeometryTable {
    double orbital_velocity_km_s = 0.0;
    double min_slant_range_km = 0.0;
    double max_slant_range_km = 0.0;
    double min_delay_s = 0.0;
    double max_delay_s = 0.0;
    double differential_delay_s = 0.0;
    double required_guard_s = 0.0;
    double max_doppler_hz = 0.0;
    double coverage_radius_km = 0.0;
};

GeometryTable geometry_table(const ScenarioConfig& config);

void print_geometry_table(std::ostream& out, const GeometryTable& t);

void print_summary_table(std::ostream& out, const std::vector<SchemeSummary>& stats);

void print_sync_report(std::ostream& out, const SyncSummary& sync);

/// Writes records.csv, cdf.csv and summary.json into `dir`, creating it.
void write_run_outputs(const std::filesystem::path& dir, const ScenarioConfig& config, const RunResult& result,
                       const std::vector<SchemeSummary>& stats);

}  // namespace leotdd
