#include "leotdd/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <optional>
#include <sstream>

namespace leotdd {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    try {
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used == t.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(key, "expected a number, got '" + text + "'");
}

long long to_integer(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    try {
        std::size_t used = 0;
        const long long v = std::stoll(t, &used);
        if (used == t.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(key, "expected an integer, got '" + text + "'");
}

std::uint64_t to_u64(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    try {
        std::size_t used = 0;
        if (!t.empty() && t[0] != '-') {
            const unsigned long long v = std::stoull(t, &used);
            if (used == t.size()) return v;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError(key, "expected an unsigned 64-bit integer, got '" + text + "'");
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    double number(const std::string& key, double fallback) const {
        const auto v = tree_.get_optional<std::string>(key);
        return v ? to_double(key, *v) : fallback;
    }
    long long integer(const std::string& key, long long fallback) const {
        const auto v = tree_.get_optional<std::string>(key);
        return v ? to_integer(key, *v) : fallback;
    }
    std::optional<std::string> text(const std::string& key) const {
        const auto v = tree_.get_optional<std::string>(key);
        if (!v) return std::nullopt;
        return *v;
    }

private:
    const pt::ptree& tree_;
};

void check_known_keys(const pt::ptree& tree) {
    const auto& known = known_config_keys();
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw ConfigError(section, "key outside of a section");
        for (const auto& [key, value] : body) {
            const std::string full = section + "." + key;
            if (std::find(known.begin(), known.end(), full) == known.end())
                throw ConfigError(full, "unknown config key");
        }
    }
}

void apply_override(pt::ptree& tree, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError(assignment, "override must look like section.key=value");
    const std::string key = trim(assignment.substr(0, eq));
    const auto& known = known_config_keys();
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError(key, "unknown config key");
    tree.put(key, trim(assignment.substr(eq + 1)));
}

ScenarioConfig from_tree(const pt::ptree& tree) {
    const Reader r(tree);
    ScenarioConfig c;

    auto& g = c.geometry;
    g.earth_radius_km = r.number("geometry.earth_radius_km", g.earth_radius_km);
    g.gravitational_parameter = r.number("geometry.gravitational_parameter", g.gravitational_parameter);
    g.altitude_km = r.number("geometry.altitude_km", g.altitude_km);
    g.min_elevation_rad = r.number("geometry.min_elevation_deg", 10.0) * kPi / 180.0;

    auto& l = c.link;
    l.eirp_density_dbw_per_mhz = r.number("channel.eirp_density_dbw_per_mhz", l.eirp_density_dbw_per_mhz);
    l.ue_g_over_t_db_per_k = r.number("channel.ue_g_over_t_db_per_k", l.ue_g_over_t_db_per_k);
    l.ue_noise_figure_db = r.number("channel.ue_noise_figure_db", l.ue_noise_figure_db);
    l.ue_tx_power_dbm = r.number("channel.ue_tx_power_dbm", l.ue_tx_power_dbm);
    l.carrier_hz = r.number("channel.carrier_ghz", l.carrier_hz / 1e9) * 1e9;
    l.bandwidth_hz = r.number("channel.bandwidth_mhz", l.bandwidth_hz / 1e6) * 1e6;
    c.aging.doppler_spread_hz = r.number("channel.doppler_spread_hz", c.aging.doppler_spread_hz);
    const long long steps = r.integer("channel.integration_steps", c.aging.integration_steps);
    if (steps < 2 || steps > 1'000'000) throw ConfigError("channel.integration_steps", "must lie in [2, 1e6]");
    c.aging.integration_steps = static_cast<int>(steps);

    const double dl_fraction = r.number("duplexing.dl_fraction", 0.7);
    const double frame_s = r.number("duplexing.frame_length_ms", 1.0) * 1e-3;
    const double efs_frame_s = r.number("duplexing.efs_frame_length_ms", 182.0) * 1e-3;
    const double guard_slot = r.number("duplexing.guard_slot_fraction", 1.0 / 14.0);
    const double guard_band = r.number("duplexing.fdd_guard_band_fraction", 0.05);
    const double backoff = r.number("duplexing.fdd_csi_backoff_db", 0.0);
    c.common_timing_offset_s = r.number("duplexing.common_timing_offset_ms", 0.0) * 1e-3;

    std::vector<double> sic_levels{100.0, 110.0, 120.0, 130.0};
    if (const auto t = r.text("duplexing.sic_db")) {
        sic_levels.clear();
        for (const auto& item : split_list(*t)) sic_levels.push_back(to_double("duplexing.sic_db", item));
        if (sic_levels.empty()) throw ConfigError("duplexing.sic_db", "must list at least one value");
    }
    std::vector<std::string> kinds{"efs", "usg", "pou"};
    if (const auto t = r.text("duplexing.schemes")) kinds = split_list(*t);

    auto finish = [&](FrameScheme s) {
        s.dl_fraction = dl_fraction;
        s.guard_slot_fraction = guard_slot;
        s.fdd_guard_band_fraction = guard_band;
        s.fdd_csi_backoff_db = backoff;
        return s;
    };
    c.baseline = finish(FrameScheme::fdd(frame_s));
    for (const auto& kind : kinds) {
        if (kind == "efs") {
            c.schemes.push_back(finish(FrameScheme::extended_frame(efs_frame_s)));
        } else if (kind == "usg") {
            c.schemes.push_back(finish(FrameScheme::ue_specific_guard(frame_s)));
        } else if (kind == "pou") {
            for (double sic : sic_levels) c.schemes.push_back(finish(FrameScheme::partial_overlap(sic, frame_s)));
        } else {
            throw ConfigError("duplexing.schemes", "unknown scheme '" + kind + "' (expected efs, usg, pou)");
        }
    }

    c.gnss.timing_error_bound_s = r.number("sync.timing_error_bound_us", 0.13) * 1e-6;
    c.gnss.frequency_error_bound_ppm = r.number("sync.frequency_error_bound_ppm", 0.1);
    if (const auto t = r.text("sync.distribution")) {
        const std::string d = trim(*t);
        if (d == "uniform") {
            c.gnss.distribution = ErrorDistribution::Uniform;
        } else if (d == "truncated_gaussian") {
            c.gnss.distribution = ErrorDistribution::TruncatedGaussian;
        } else {
            throw ConfigError("sync.distribution", "expected uniform or truncated_gaussian");
        }
    }
    c.sync_thresholds.timing_s = r.number("sync.timing_threshold_us", 3.0) * 1e-6;
    c.sync_thresholds.frequency_ppm = r.number("sync.frequency_threshold_ppm", 0.05);

    const long long num_ues = r.integer("experiment.num_ues", 10000);
    if (num_ues < 1) throw ConfigError("experiment.num_ues", "must be at least 1");
    c.num_ues = static_cast<std::size_t>(num_ues);
    const auto seed = r.text("experiment.seed");
    if (!seed) throw ConfigError("experiment.seed", "a seed is required for reproducibility");
    c.seed = to_u64("experiment.seed", *seed);
    const long long threads = r.integer("experiment.threads", 0);
    if (threads < 0 || threads > 4096) throw ConfigError("experiment.threads", "must lie in [0, 4096]");
    c.threads = static_cast<unsigned>(threads);

    c.validate();
    return c;
}

}  // namespace

const std::vector<std::string>& known_config_keys() {
    static const std::vector<std::string> keys{
        "geometry.earth_radius_km",        "geometry.gravitational_parameter", "geometry.altitude_km",
        "geometry.min_elevation_deg",      "channel.eirp_density_dbw_per_mhz", "channel.ue_g_over_t_db_per_k",
        "channel.ue_noise_figure_db",      "channel.ue_tx_power_dbm",          "channel.carrier_ghz",
        "channel.bandwidth_mhz",           "channel.doppler_spread_hz",        "channel.integration_steps",
        "duplexing.dl_fraction",           "duplexing.frame_length_ms",        "duplexing.efs_frame_length_ms",
        "duplexing.guard_slot_fraction",   "duplexing.fdd_guard_band_fraction", "duplexing.fdd_csi_backoff_db",
        "duplexing.common_timing_offset_ms", "duplexing.schemes",              "duplexing.sic_db",
        "sync.timing_error_bound_us",      "sync.frequency_error_bound_ppm",   "sync.distribution",
        "sync.timing_threshold_us",        "sync.frequency_threshold_ppm",     "experiment.num_ues",
        "experiment.seed",                 "experiment.threads",
    };
    return keys;
}

ScenarioConfig parse_config(const std::string& ini_text, const std::vector<std::string>& overrides) {
    pt::ptree tree;
    std::istringstream in(ini_text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("<file>", "line " + std::to_string(e.line()) + ": " + e.message());
    }
    check_known_keys(tree);
    for (const auto& o : overrides) apply_override(tree, o);
    return from_tree(tree);
}

ScenarioConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), overrides);
}

}  // namespace leotdd
