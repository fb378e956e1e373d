#include "primordia/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "primordia/config.hpp"
#include "primordia/growth_check.hpp"
#include "primordia/io.hpp"
#include "primordia/pattern_space.hpp"

namespace primordia {

namespace {

RunConfig load_config(const std::string& path) {
    if (path.empty()) return parse_config_text("", "<defaults>");
    return parse_config(path);
}

AxisSpec parse_axis(const std::string& spec) {
    // name:min:max:count
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 4)
        throw std::invalid_argument("axis spec must be name:min:max:count, got '" +
                                    spec + "'");
    AxisSpec ax;
    ax.name = parts[0];
    ax.min = std::stod(parts[1]);
    ax.max = std::stod(parts[2]);
    ax.count = std::stoi(parts[3]);
    return ax;
}

struct OutTarget {
    std::ostream* os;
    std::ofstream file;
    explicit OutTarget(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            os = &fallback;
        } else {
            file.open(path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open " + path);
            os = &file;
        }
    }
};

RunManifest make_manifest(const std::string& sub, const RunConfig& cfg, double seconds) {
    RunManifest m;
    m.subcommand = sub;
    m.config_hash = fnv1a_hex(cfg.source_text);
    m.seed = cfg.sim.seed;
    m.tool_version = kToolVersion;
    m.duration_seconds = seconds;
    m.params = cfg.sim.params;
    return m;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"primordia: poro-mechano-chemical patterning toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    // steady
    auto* steady = app.add_subcommand("steady", "print the homogeneous steady state");
    steady->add_option("--config", config_path, "configuration file");
    steady->add_option("--out", out_path, "output CSV path (default stdout)");
    // dispersion
    double k2_min = 1e-3, k2_max = 50.0;
    int points = 500;
    bool include_inertial = false;
    auto* disp = app.add_subcommand("dispersion", "growth factors over a k^2 grid");
    disp->add_option("--config", config_path, "configuration file");
    disp->add_option("--k2-min", k2_min, "smallest k^2 (default 1e-3)");
    disp->add_option("--k2-max", k2_max, "largest k^2 (default 50)");
    disp->add_option("--points", points, "number of log-spaced points (default 500)");
    disp->add_flag("--include-inertial-factor", include_inertial,
                   "include the pure-imaginary inertial factor roots");
    disp->add_option("--out", out_path, "output CSV path (default stdout)");
    // patternspace
    std::string axis1_spec, axis2_spec, mode_str = "uncoupled";
    auto* ps = app.add_subcommand("patternspace", "2-D patterning-space map");
    ps->add_option("--config", config_path, "configuration file");
    ps->add_option("--axis1", axis1_spec, "axis spec name:min:max:count")->required();
    ps->add_option("--axis2", axis2_spec, "axis spec name:min:max:count")->required();
    ps->add_option("--mode", mode_str, "uncoupled|coupled (default uncoupled)");
    ps->add_option("--out", out_path, "output CSV path (default stdout)");
    // simulate
    std::string sim_out;
    auto* sim = app.add_subcommand("simulate", "run the coupled 2-D simulation");
    sim->add_option("--config", config_path, "configuration file")->required();
    sim->add_option("--out", sim_out, "output directory")->required();
    // growth-check
    int samples = 1000;
    uint64_t gseed = 2024;
    auto* gc = app.add_subcommand("growth-check", "run the growth identity suite");
    gc->add_option("--samples", samples, "random samples per identity (default 1000)");
    gc->add_option("--seed", gseed, "RNG seed (default 2024)");
    gc->add_option("--out", out_path, "write the table to a file as well");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n" << app.help();
        return 1;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const auto elapsed = [&]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    try {
        if (steady->parsed()) {
            const RunConfig cfg = load_config(config_path);
            const SteadyState s = steady_state(cfg.sim.params);
            OutTarget tgt(out_path, out);
            write_steady_csv(*tgt.os, s);
            if (!out_path.empty())
                write_manifest(out_path + ".manifest.json",
                               make_manifest("steady", cfg, elapsed()), cfg);
            return 0;
        }
        if (disp->parsed()) {
            const RunConfig cfg = load_config(config_path);
            const SteadyState s = steady_state(cfg.sim.params);
            const auto grid = default_k2_grid(k2_min, k2_max, points);
            DispersionOptions opt;
            opt.include_inertial_factor = include_inertial;
            const auto pts = dispersion(cfg.sim.params, s, grid, opt);
            OutTarget tgt(out_path, out);
            write_dispersion_csv(*tgt.os, pts);
            if (!out_path.empty())
                write_manifest(out_path + ".manifest.json",
                               make_manifest("dispersion", cfg, elapsed()), cfg);
            return 0;
        }
        if (ps->parsed()) {
            const RunConfig cfg = load_config(config_path);
            const AxisSpec a1 = parse_axis(axis1_spec);
            const AxisSpec a2 = parse_axis(axis2_spec);
            CriticalMode mode;
            if (mode_str == "uncoupled") mode = CriticalMode::Uncoupled;
            else if (mode_str == "coupled") mode = CriticalMode::Coupled;
            else throw std::invalid_argument("mode must be uncoupled|coupled");
            const PatternSpaceGrid g =
                pattern_space(cfg.sim.params, a1, a2, mode, cfg.window);
            OutTarget tgt(out_path, out);
            write_patternspace_csv(*tgt.os, g);
            if (!out_path.empty())
                write_manifest(out_path + ".manifest.json",
                               make_manifest("patternspace", cfg, elapsed()), cfg);
            return 0;
        }
        if (sim->parsed()) {
            const RunConfig cfg = load_config(config_path);
            Simulator simulator(cfg.sim);
            std::filesystem::create_directories(sim_out);
            try {
                simulator.run_simulation(sim_out);
            } catch (const SimNumericalError&) {
                // partial outputs stay on disk; the manifest records the attempt
                write_manifest(sim_out + "/manifest.json",
                               make_manifest("simulate", cfg, elapsed()), cfg);
                throw;
            }
            write_manifest(sim_out + "/manifest.json",
                           make_manifest("simulate", cfg, elapsed()), cfg);
            return 0;
        }
        if (gc->parsed()) {
            const auto lines = run_growth_checks(samples, gseed);
            const std::string table = format_growth_table(lines);
            out << table;
            bool ok = true;
            for (const auto& l : lines) ok = ok && l.passed;
            if (!out_path.empty()) {
                std::ofstream f(out_path, std::ios::binary);
                if (!f) throw std::runtime_error("cannot open " + out_path);
                f << table;
                const RunConfig cfg = parse_config_text("", "<defaults>");
                write_manifest(out_path + ".manifest.json",
                               make_manifest("growth-check", cfg, elapsed()), cfg);
            }
            return ok ? 0 : 2;
        }
    } catch (const SimNumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        const std::string what = e.what();
        err << "error: " << what << "\n";
        if (what.find("cannot open") != std::string::npos ||
            what.find("not found") != std::string::npos)
            return 1;
        return 2;
    }
    return 1;
}

}  // namespace primordia
