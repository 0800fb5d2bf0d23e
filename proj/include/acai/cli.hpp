// Command-line front end: analyze | failure-table | sweep | oracle.
//
// Exit codes: 0 success / controllable, 1 usage or configuration error,
// 2 uncontrollable (analyze), 3 oracle upper bound violated.

#pragma once

#include "acai/config.hpp"
#include "acai/ctrb.hpp"
#include "acai/report.hpp"
#include "acai/sweep.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace acai::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUncontrollable = 2;
inline constexpr int kExitOracleViolation = 3;

struct VehicleOptions {
    std::string preset;
    std::string config;
    std::vector<std::string> overrides;
};

struct LoadedVehicle {
    std::string name;
    MultirotorGeometry geometry;
};

inline void add_vehicle_options(CLI::App& cmd, VehicleOptions& opts) {
    auto* preset = cmd.add_option("--preset", opts.preset, "Built-in vehicle")
                       ->check(CLI::IsMember({std::string(kPresetPnpnpn), std::string(kPresetPpnnpn)}));
    auto* config = cmd.add_option("--config", opts.config, "JSON vehicle description");
    preset->excludes(config);
    cmd.add_option("--set", opts.overrides, "Efficiency override etaI=V (repeatable, rotors numbered from 1)");
}

inline LoadedVehicle load_vehicle(const VehicleOptions& opts) {
    LoadedVehicle v;
    if (!opts.preset.empty()) {
        v.name = opts.preset;
        v.geometry = *preset_geometry(opts.preset);
    } else if (!opts.config.empty()) {
        v.name = opts.config;
        v.geometry = load_vehicle_config(opts.config);
    } else {
        throw ConfigError("one of --preset or --config is required");
    }
    for (const auto& text : opts.overrides) v.geometry = apply_override(v.geometry, parse_override(text));
    return v;
}

inline std::vector<std::size_t> parse_rotor_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw ConfigError("--rotors: '" + item + "' is not a rotor number");
        const auto n = std::stoul(item);
        if (n == 0) throw ConfigError("--rotors: rotor numbers start at 1");
        out.push_back(n - 1);
    }
    if (out.empty()) throw ConfigError("--rotors: no rotors given");
    return out;
}

/// Runs the CLI on argv-style arguments (args[0] is the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false) {
    CLI::App app{"Controllability analysis for multirotors with degraded or failed rotors"};
    app.require_subcommand(1);

    VehicleOptions analyze_opts, table_opts, sweep_opts, oracle_opts;
    std::string analyze_format = "text", table_format = "text", oracle_format = "text", sweep_format = "csv";
    std::string rotors_text, out_path;
    double spacing = kDefaultSweepSpacing;
    std::size_t directions = 20000;
    std::uint64_t seed = 42;

    auto* analyze = app.add_subcommand("analyze", "Run the controllability test for one vehicle");
    add_vehicle_options(*analyze, analyze_opts);
    analyze->add_option("--format", analyze_format)->check(CLI::IsMember({"text", "json"}));

    auto* table = app.add_subcommand("failure-table", "Nominal case plus every single-rotor failure");
    add_vehicle_options(*table, table_opts);
    table->add_option("--format", table_format)->check(CLI::IsMember({"text", "json", "csv"}));

    auto* sweep = app.add_subcommand("sweep", "Efficiency lattice sweep, long-form CSV");
    add_vehicle_options(*sweep, sweep_opts);
    sweep->add_option("--rotors", rotors_text, "Comma-separated rotor numbers (1 to 3 of them)")->required();
    sweep->add_option("--spacing", spacing, "Lattice spacing in (0, 1]");
    sweep->add_option("--out", out_path, "Output CSV path (stdout when omitted)");
    sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"csv"}));

    auto* oracle = app.add_subcommand("oracle", "Compare the closed form with sampled directional LPs");
    add_vehicle_options(*oracle, oracle_opts);
    oracle->add_option("--directions", directions, "Number of sampled directions")->check(CLI::PositiveNumber);
    oracle->add_option("--seed", seed, "Direction sampler seed");
    oracle->add_option("--format", oracle_format)->check(CLI::IsMember({"text", "json"}));

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }

    const TextStyle style{color};
    try {
        if (analyze->parsed()) {
            const auto v = load_vehicle(analyze_opts);
            const auto verdict = test_controllability(v.geometry);
            if (analyze_format == "json")
                out << analysis_json(v.name, v.geometry, verdict).dump(2) << "\n";
            else
                out << analysis_text(v.name, v.geometry, verdict, style);
            return verdict.controllable ? kExitOk : kExitUncontrollable;
        }
        if (table->parsed()) {
            const auto v = load_vehicle(table_opts);
            const auto rows = failure_table(v.geometry);
            if (table_format == "csv")
                out << failure_table_csv(rows);
            else if (table_format == "json")
                out << failure_table_json(rows).dump(2) << "\n";
            else
                out << failure_table_text(rows, style);
            return kExitOk;
        }
        if (sweep->parsed()) {
            const auto v = load_vehicle(sweep_opts);
            const auto rotors = parse_rotor_list(rotors_text);
            const auto csv = sweep_csv(run_sweep(v.geometry, rotors, spacing));
            if (out_path.empty()) {
                out << csv;
            } else {
                std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
                if (!file) throw ConfigError(out_path + ": cannot open for writing");
                file << csv;
                if (!file.flush()) throw ConfigError(out_path + ": write failed");
            }
            return kExitOk;
        }
        if (oracle->parsed()) {
            const auto v = load_vehicle(oracle_opts);
            const auto cmp = compare_with_oracle(v.geometry, directions, seed);
            if (oracle_format == "json")
                out << oracle_json(cmp).dump(2) << "\n";
            else
                out << oracle_text(cmp);
            return cmp.upper_bound_holds ? kExitOk : kExitOracleViolation;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const LpError& e) {
        err << "error: LP failure: " << e.what() << "\n";
        return kExitError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

}  // namespace acai::cli
