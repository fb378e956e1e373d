#pragma once

#include <cstdint>
#include <string>

#include "primordia/conditions.hpp"
#include "primordia/pdesim.hpp"

namespace primordia {

/// Raised for malformed configuration input; messages carry
/// origin:line prefixes.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fully resolved run configuration: model parameters with simulator
/// and stability-scan settings. Defaults reproduce the reference
/// parameter set.
struct RunConfig {
    SimConfig sim;
    K2Window window;
    std::string source_text;  // raw config bytes (hashed into manifests)
};

/// Parses a flat key = value file with [section] headers. Sections:
/// [model] (parameter names), [grid] (Lx, Ly, nx, ny), [time]
/// (dt, t_final), [sim] (noise_amplitude, seed, output_every,
/// fixed_point_tol, fixed_point_max_iters, priming, lin_tol),
/// [bc] (clamped = comma list of edges), [load] (s0, t_hat, edge),
/// [stability] (k2_min, k2_max, k2_points). '#' starts a comment.
/// Unknown sections or keys, malformed values, and duplicate keys are
/// errors carrying line numbers. An empty file yields the defaults.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text,
                            const std::string& origin = "<config>");

/// FNV-1a 64-bit hash, hex-encoded; used for config hashes.
std::string fnv1a_hex(const std::string& bytes);

/// Reproducibility manifest emitted alongside every output set.
struct RunManifest {
    std::string subcommand;
    std::string config_hash;
    uint64_t seed = 0;
    std::string tool_version;
    double duration_seconds = 0;
    ParameterSet params;

    std::string to_json(const RunConfig& cfg) const;
};
void write_manifest(const std::string& path, const RunManifest& m, const RunConfig& cfg);

extern const char* const kToolVersion;

}  // namespace primordia
