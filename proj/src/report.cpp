#include "leotdd/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>

#include "json.hpp"

namespace leotdd {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_records_csv(std::ostream& out, const RunResult& result) {
    out << "ue_index,central_angle_deg,elevation_deg,slant_range_km,delay_ms,doppler_khz,snr_db";
    for (const auto& s : result.schemes) out << ',' << s.id() << "_overlap_ms," << s.id() << "_ratio";
    out << '\n';
    constexpr double deg = 180.0 / kPi;
    for (const auto& r : result.records) {
        out << r.ue_index << ',' << format_number(r.placement.central_angle_rad * deg) << ','
            << format_number(r.sight.elevation_rad * deg) << ',' << format_number(r.sight.slant_range_km) << ','
            << format_number(r.sight.delay_s * 1e3) << ',' << format_number(r.sight.doppler_hz * 1e-3) << ','
            << format_number(r.snr_db);
        for (const auto& o : r.outcomes)
            out << ',' << format_number(o.overlap_s * 1e3) << ',' << format_number(o.ratio ? *o.ratio : NAN);
        out << '\n';
    }
}

void write_cdf_csv(std::ostream& out, const RunResult& result) {
    out << "scheme,ratio,cumulative_probability\n";
    for (std::size_t k = 0; k < result.schemes.size(); ++k) {
        const auto ratios = scheme_ratios(result, k);
        if (ratios.empty()) continue;
        const auto cdf = empirical_cdf(ratios);
        const std::string id = result.schemes[k].id();
        for (std::size_t i = 0; i < cdf.values.size(); ++i)
            out << id << ',' << format_number(cdf.values[i]) << ',' << format_number(cdf.probabilities[i]) << '\n';
    }
}

namespace {

nlohmann::json finite_or_string(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

}  // namespace

std::string summary_json(const ScenarioConfig& config, const RunResult& result,
                         const std::vector<SchemeSummary>& stats) {
    using nlohmann::json;
    json j;
    j["num_ues"] = result.records.size();
    j["seed"] = config.seed;
    json schemes = json::array();
    for (std::size_t k = 0; k < stats.size(); ++k) {
        const auto& s = stats[k];
        const auto& scheme = result.schemes[k];
        schemes.push_back({{"id", s.id},
                           {"label", s.label},
                           {"kind", to_string(scheme.kind)},
                           {"frame_length_ms", scheme.frame_length_s * 1e3},
                           {"sic_db", scheme.kind == SchemeKind::TddPou ? finite_or_string(scheme.sic_db) : json()},
                           {"count", s.count},
                           {"degenerate", s.degenerate},
                           {"mean_ratio", s.mean_ratio},
                           {"median_ratio", s.median_ratio},
                           {"fraction_above_one", s.fraction_above_one}});
    }
    j["schemes"] = schemes;

    const auto& sy = result.sync;
    j["sync"] = {
        {"draws", sy.draws},
        {"max_timing_residual_us", sy.max_timing_residual_s * 1e6},
        {"mean_timing_residual_us", sy.mean_timing_residual_s * 1e6},
        {"max_frequency_residual_hz", sy.max_frequency_residual_hz},
        {"timing_pass_fraction", sy.timing_pass_fraction},
        {"frequency_pass_fraction", sy.frequency_pass_fraction},
        {"timing_threshold_us", sy.worst_case.timing_threshold_s * 1e6},
        {"frequency_threshold_hz", sy.worst_case.frequency_threshold_hz},
        {"timing_pass", sy.worst_case_report.timing_pass},
        {"frequency_pass", sy.worst_case_report.frequency_pass},
        {"timing_margin_us", sy.worst_case_report.timing_margin_s * 1e6},
        {"frequency_margin_hz", sy.worst_case_report.frequency_margin_hz},
        {"thresholds_are_assumptions", true},
    };
    return j.dump(2) + "\n";
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "key,value,scheme,mean_ratio,median_ratio,fraction_above_one,degenerate_count\n";
    for (const auto& row : rows)
        for (const auto& s : row.stats)
            out << row.key << ',' << row.value << ',' << s.id << ',' << format_number(s.mean_ratio) << ','
                << format_number(s.median_ratio) << ',' << format_number(s.fraction_above_one) << ','
                << s.degenerate << '\n';
}

GeometryTable geometry_table(const ScenarioConfig& config) {
    const auto& g = config.geometry;
    GeometryTable t;
    t.orbital_velocity_km_s = orbital_velocity(g);
    t.min_slant_range_km = g.altitude_km;
    t.max_slant_range_km = max_slant_range(g);
    t.min_delay_s = propagation_delay(t.min_slant_range_km);
    t.max_delay_s = propagation_delay(t.max_slant_range_km);
    t.differential_delay_s = differential_delay(g);
    t.required_guard_s = required_guard_period(t.max_delay_s);
    t.max_doppler_hz = doppler_shift(radial_velocity(g, {coverage_central_angle(g), 0.0}), config.link.carrier_hz);
    t.coverage_radius_km = coverage_radius(g);
    return t;
}

void print_geometry_table(std::ostream& out, const GeometryTable& t) {
    auto row = [&](const char* name, double v, const char* unit) {
        out << std::left << std::setw(26) << name << std::right << std::setw(12) << format_number(v) << ' ' << unit
            << '\n';
    };
    row("orbital_velocity", t.orbital_velocity_km_s, "km/s");
    row("min_slant_range", t.min_slant_range_km, "km");
    row("max_slant_range", t.max_slant_range_km, "km");
    row("min_delay", t.min_delay_s * 1e3, "ms");
    row("max_delay", t.max_delay_s * 1e3, "ms");
    row("differential_delay", t.differential_delay_s * 1e3, "ms");
    row("required_guard_period", t.required_guard_s * 1e3, "ms");
    row("max_doppler", t.max_doppler_hz * 1e-3, "kHz");
    row("coverage_radius", t.coverage_radius_km, "km");
}

void print_summary_table(std::ostream& out, const std::vector<SchemeSummary>& stats) {
    out << std::left << std::setw(18) << "scheme" << std::right << std::setw(12) << "frac>1" << std::setw(12)
        << "mean" << std::setw(12) << "median" << std::setw(12) << "degenerate" << '\n';
    for (const auto& s : stats)
        out << std::left << std::setw(18) << s.id << std::right << std::setw(12) << format_number(s.fraction_above_one)
            << std::setw(12) << format_number(s.mean_ratio) << std::setw(12) << format_number(s.median_ratio)
            << std::setw(12) << s.degenerate << '\n';
}

void print_sync_report(std::ostream& out, const SyncSummary& sync) {
    const auto& b = sync.worst_case;
    const auto& r = sync.worst_case_report;
    out << "draws                    " << sync.draws << '\n'
        << "max_timing_residual      " << format_number(sync.max_timing_residual_s * 1e6) << " us (threshold "
        << format_number(b.timing_threshold_s * 1e6) << " us, " << (r.timing_pass ? "pass" : "FAIL") << ")\n"
        << "max_frequency_residual   " << format_number(sync.max_frequency_residual_hz) << " Hz (threshold "
        << format_number(b.frequency_threshold_hz) << " Hz, " << (r.frequency_pass ? "pass" : "FAIL") << ")\n"
        << "timing_pass_fraction     " << format_number(sync.timing_pass_fraction) << '\n'
        << "frequency_pass_fraction  " << format_number(sync.frequency_pass_fraction) << '\n'
        << "thresholds are assumed terrestrial TDD figures, not measured requirements\n";
}

void write_run_outputs(const std::filesystem::path& dir, const ScenarioConfig& config, const RunResult& result,
                       const std::vector<SchemeSummary>& stats) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

    auto write = [&](const char* name, auto&& body) {
        const auto path = dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open " + path.string());
        body(out);
        out.flush();
        if (!out) throw IoError("write failed for " + path.string());
    };
    write("records.csv", [&](std::ostream& o) { write_records_csv(o, result); });
    write("cdf.csv", [&](std::ostream& o) { write_cdf_csv(o, result); });
    write("summary.json", [&](std::ostream& o) { o << summary_json(config, result, stats); });
}

}  // namespace leotdd
