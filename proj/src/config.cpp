#include "primordia/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace primordia {

const char* const kToolVersion = "0.1.0";

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(origin + ":" + std::to_string(line) + ": malformed value for '" +
                          key + "': '" + value + "'");
    }
}

uint64_t parse_u64(const std::string& origin, int line, const std::string& key,
                   const std::string& value) {
    try {
        size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(origin + ":" + std::to_string(line) + ": malformed value for '" +
                          key + "': '" + value + "'");
    }
}

Edge parse_edge(const std::string& origin, int line, const std::string& value) {
    if (value == "bottom") return Edge::Bottom;
    if (value == "top") return Edge::Top;
    if (value == "left") return Edge::Left;
    if (value == "right") return Edge::Right;
    throw ConfigError(origin + ":" + std::to_string(line) + ": unknown edge '" + value +
                      "' (expected bottom|top|left|right)");
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    cfg.source_text = text;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::string section;
    std::map<std::string, int> seen;  // "section.key" -> first line

    const auto fail = [&](const std::string& msg) {
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("malformed section header '" + raw + "'");
            section = trim(line.substr(1, line.size() - 2));
            static const std::set<std::string> known = {"model", "grid",  "time",
                                                        "sim",   "bc",    "load",
                                                        "stability"};
            if (!known.count(section)) fail("unknown section '" + section + "'");
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value, got '" + raw + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail("empty key");
        if (section.empty()) fail("key '" + key + "' outside any [section]");
        const std::string id = section + "." + key;
        if (const auto it = seen.find(id); it != seen.end())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                              key + "' in [" + section + "] (first set at line " +
                              std::to_string(it->second) + ")");
        seen[id] = lineno;

        if (section == "model") {
            try {
                set_parameter(cfg.sim.params, key,
                              parse_double(origin, lineno, key, value));
            } catch (const std::invalid_argument&) {
                fail("unknown key '" + key + "' in [model]");
            }
        } else if (section == "grid") {
            if (key == "Lx") cfg.sim.grid.Lx = parse_double(origin, lineno, key, value);
            else if (key == "Ly") cfg.sim.grid.Ly = parse_double(origin, lineno, key, value);
            else if (key == "nx") cfg.sim.grid.nx = int(parse_u64(origin, lineno, key, value));
            else if (key == "ny") cfg.sim.grid.ny = int(parse_u64(origin, lineno, key, value));
            else fail("unknown key '" + key + "' in [grid]");
        } else if (section == "time") {
            if (key == "dt") cfg.sim.dt = parse_double(origin, lineno, key, value);
            else if (key == "t_final") cfg.sim.t_final = parse_double(origin, lineno, key, value);
            else fail("unknown key '" + key + "' in [time]");
        } else if (section == "sim") {
            if (key == "noise_amplitude")
                cfg.sim.noise_amplitude = parse_double(origin, lineno, key, value);
            else if (key == "seed") cfg.sim.seed = parse_u64(origin, lineno, key, value);
            else if (key == "output_every")
                cfg.sim.output_every = int(parse_u64(origin, lineno, key, value));
            else if (key == "fixed_point_tol")
                cfg.sim.fixed_point_tol = parse_double(origin, lineno, key, value);
            else if (key == "fixed_point_max_iters")
                cfg.sim.fixed_point_max_iters = int(parse_u64(origin, lineno, key, value));
            else if (key == "lin_tol")
                cfg.sim.lin_tol = parse_double(origin, lineno, key, value);
            else if (key == "priming") {
                if (value == "wave") cfg.sim.priming_saturated = false;
                else if (value == "saturated") cfg.sim.priming_saturated = true;
                else fail("priming must be wave|saturated");
            } else fail("unknown key '" + key + "' in [sim]");
        } else if (section == "bc") {
            if (key == "clamped") {
                cfg.sim.clamped.clear();
                std::istringstream ss(value);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    tok = trim(tok);
                    if (tok.empty()) continue;
                    cfg.sim.clamped.insert(parse_edge(origin, lineno, tok));
                }
            } else fail("unknown key '" + key + "' in [bc]");
        } else if (section == "load") {
            if (key == "s0") cfg.sim.load.s0 = parse_double(origin, lineno, key, value);
            else if (key == "t_hat") cfg.sim.load.t_hat = parse_double(origin, lineno, key, value);
            else if (key == "edge") cfg.sim.load.edge = parse_edge(origin, lineno, value);
            else fail("unknown key '" + key + "' in [load]");
        } else if (section == "stability") {
            if (key == "k2_min") cfg.window.k2_min = parse_double(origin, lineno, key, value);
            else if (key == "k2_max") cfg.window.k2_max = parse_double(origin, lineno, key, value);
            else if (key == "k2_points")
                cfg.window.points = int(parse_u64(origin, lineno, key, value));
            else fail("unknown key '" + key + "' in [stability]");
        }
    }
    cfg.sim.params.validate();
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config file not found: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::string RunManifest::to_json(const RunConfig& cfg) const {
    nlohmann::ordered_json j;
    j["subcommand"] = subcommand;
    j["tool_version"] = tool_version;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    j["duration_seconds"] = duration_seconds;
    nlohmann::ordered_json pj;
    for (const auto& name : parameter_names()) pj[name] = get_parameter(params, name);
    j["parameters"] = pj;
    nlohmann::ordered_json sj;
    sj["Lx"] = cfg.sim.grid.Lx;
    sj["Ly"] = cfg.sim.grid.Ly;
    sj["nx"] = cfg.sim.grid.nx;
    sj["ny"] = cfg.sim.grid.ny;
    sj["dt"] = cfg.sim.dt;
    sj["t_final"] = cfg.sim.t_final;
    sj["noise_amplitude"] = cfg.sim.noise_amplitude;
    sj["output_every"] = cfg.sim.output_every;
    sj["fixed_point_tol"] = cfg.sim.fixed_point_tol;
    sj["fixed_point_max_iters"] = cfg.sim.fixed_point_max_iters;
    sj["priming"] = cfg.sim.priming_saturated ? "saturated" : "wave";
    j["sim"] = sj;
    j["k2_window"] = {{"k2_min", cfg.window.k2_min},
                      {"k2_max", cfg.window.k2_max},
                      {"points", cfg.window.points}};
    return j.dump(2) + "\n";
}

void write_manifest(const std::string& path, const RunManifest& m, const RunConfig& cfg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << m.to_json(cfg);
}

}  // namespace primordia
