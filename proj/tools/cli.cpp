#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "leotdd/config.hpp"
#include "leotdd/experiment.hpp"
#include "leotdd/report.hpp"

namespace leotdd::cli {

namespace {

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::string sweep_key;
    std::vector<std::string> sweep_values;
};

std::string resolve_config_path(const Options& opt) {
    if (!opt.config_path.empty()) return opt.config_path;
    if (const char* env = std::getenv(kConfigEnvVar)) return env;
    throw ConfigError("--config", std::string("no config file given and ") + kConfigEnvVar + " is unset");
}

ScenarioConfig load(const Options& opt, std::vector<std::string> extra = {}) {
    std::vector<std::string> overrides = opt.overrides;
    if (opt.seed) overrides.push_back("experiment.seed=" + std::to_string(*opt.seed));
    overrides.insert(overrides.end(), extra.begin(), extra.end());
    return load_config(resolve_config_path(opt), overrides);
}

/// Short sweep names map onto config keys; full "section.key" names pass through.
std::string sweep_config_key(const std::string& key) {
    if (key == "sic_db") return "duplexing.sic_db";
    if (key == "doppler_spread" || key == "doppler_spread_hz") return "channel.doppler_spread_hz";
    if (key == "frame_length" || key == "frame_length_ms") return "duplexing.frame_length_ms";
    static const std::vector<std::string> full{"duplexing.sic_db", "channel.doppler_spread_hz",
                                               "duplexing.frame_length_ms"};
    if (std::find(full.begin(), full.end(), key) != full.end()) return key;
    throw ConfigError(key, "not a sweepable key (sic_db, doppler_spread, frame_length)");
}

int cmd_run(const Options& opt, std::ostream& out) {
    const auto config = load(opt);
    const auto result = run(config);
    const auto stats = summarize(result);
    write_run_outputs(opt.out_dir, config, result, stats);
    print_summary_table(out, stats);
    return kOk;
}

int cmd_geom(const Options& opt, std::ostream& out) {
    print_geometry_table(out, geometry_table(load(opt)));
    return kOk;
}

int cmd_sync(const Options& opt, std::ostream& out) {
    print_sync_report(out, run_sync(load(opt)));
    return kOk;
}

int cmd_sweep(const Options& opt, std::ostream& out) {
    const std::string key = sweep_config_key(opt.sweep_key);
    if (opt.sweep_values.empty()) throw ConfigError("--values", "at least one value is required");

    std::vector<SweepRow> rows;
    for (const auto& value : opt.sweep_values) {
        const auto config = load(opt, {key + "=" + value});
        rows.push_back({opt.sweep_key, value, summarize(run(config))});
    }

    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + opt.out_dir + ": " + ec.message());
    const auto path = std::filesystem::path(opt.out_dir) / "sweep.csv";
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open " + path.string());
    write_sweep_csv(file, rows);
    if (!file.flush()) throw IoError("write failed for " + path.string());

    write_sweep_csv(out, rows);
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte Carlo comparison of TDD frame structures against FDD for a LEO satellite downlink", "leotdd"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "Scenario INI file (default: $LEOTDD_CONFIG)");
        sub->add_option("--set", opt.overrides, "Override a config value, section.key=value (repeatable)")
            ->take_all();
        sub->add_option("--seed", opt.seed, "Override experiment.seed");
    };

    auto* run_cmd = app.add_subcommand("run", "Run the UE-drop experiment and write records/cdf/summary");
    add_common(run_cmd);
    run_cmd->add_option("--out", opt.out_dir, "Output directory");

    auto* geom_cmd = app.add_subcommand("geom", "Print headline geometry figures");
    add_common(geom_cmd);

    auto* sync_cmd = app.add_subcommand("sync", "Print the GNSS synchronization budget");
    add_common(sync_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "Repeat the experiment over values of one key");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--out", opt.out_dir, "Output directory for sweep.csv");
    sweep_cmd->add_option("--key", opt.sweep_key, "sic_db, doppler_spread or frame_length")->required();
    sweep_cmd->add_option("--values", opt.sweep_values, "Comma-separated values")->required()->delimiter(',');

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(opt, out);
        if (geom_cmd->parsed()) return cmd_geom(opt, out);
        if (sync_cmd->parsed()) return cmd_sync(opt, out);
        if (sweep_cmd->parsed()) return cmd_sweep(opt, out);
    } catch (const ConfigError& e) {
        err << "invalid config: " << e.what() << '\n';
        return kValidation;
    } catch (const std::invalid_argument& e) {
        err << "invalid config: " << e.what() << '\n';
        return kValidation;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const std::ios_base::failure& e) {
        err << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kValidation;
}

}  // namespace leotdd::cli
