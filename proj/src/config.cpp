#include "vdl/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "vdl/errors.hpp"

namespace vdl {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& s) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw format_error("config: bad number for " + key + ": '" + s + "'");
    }
    if (pos != s.size()) throw format_error("config: trailing junk for " + key + ": '" + s + "'");
    return v;
}

long parse_long(const std::string& key, const std::string& s) {
    std::size_t pos = 0;
    long v;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw format_error("config: bad integer for " + key + ": '" + s + "'");
    }
    if (pos != s.size()) throw format_error("config: trailing junk for " + key + ": '" + s + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& s) {
    std::string t;
    for (char c : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw format_error("config: bad boolean for " + key + ": '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

} // namespace

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::string section;
    std::string line;
    int lineno = 0;
    std::map<std::string, bool> seen;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw format_error("config line " + std::to_string(lineno) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "grid" && section != "solver" && section != "diagnostics" &&
                section != "output")
                throw format_error("config: unknown section [" + section + "]");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw format_error("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (section.empty())
            throw format_error("config: key '" + key + "' before any section");
        const std::string full = section + "." + key;
        if (seen.count(full)) throw format_error("config: duplicate key " + full);
        seen[full] = true;

        if (section == "grid") {
            if (key == "n") {
                const long n = parse_long(full, val);
                if (n < 4 || n > 4096) throw format_error("config: grid.n out of range");
                cfg.sim.grid.n = static_cast<int>(n);
            } else if (key == "l") {
                const double l = parse_double(full, val);
                if (!(l > 0.0)) throw format_error("config: grid.l must be > 0");
                cfg.sim.grid.l = l;
            } else {
                throw format_error("config: unknown key " + full);
            }
        } else if (section == "solver") {
            if (key == "nu") {
                cfg.sim.nu = parse_double(full, val);
                if (!(cfg.sim.nu > 0.0)) throw format_error("config: solver.nu must be > 0");
            } else if (key == "dt") {
                cfg.sim.dt = parse_double(full, val);
                if (!(cfg.sim.dt > 0.0)) throw format_error("config: solver.dt must be > 0");
            } else if (key == "t_end") {
                cfg.sim.t_end = parse_double(full, val);
                if (cfg.sim.t_end < 0.0) throw format_error("config: solver.t_end must be >= 0");
            } else if (key == "init") {
                cfg.sim.init = InitSpec::parse(val);
            } else if (key == "dealias") {
                cfg.sim.dealias = parse_bool(full, val);
            } else if (key == "cfl_safety") {
                cfg.sim.cfl_safety = parse_double(full, val);
                if (!(cfg.sim.cfl_safety > 0.0))
                    throw format_error("config: solver.cfl_safety must be > 0");
            } else {
                throw format_error("config: unknown key " + full);
            }
        } else if (section == "diagnostics") {
            if (key == "output_every") {
                const long v = parse_long(full, val);
                if (v < 1) throw format_error("config: diagnostics.output_every must be >= 1");
                cfg.sim.output_every = static_cast<int>(v);
            } else if (key == "r_list") {
                cfg.diag.r_list.clear();
                for (const std::string& tok : split(val, ',')) {
                    const double r = parse_double(full, tok);
                    if (!(r > 1.0 && r <= 2.0))
                        throw format_error("config: r_list entries must lie in (1, 2]");
                    cfg.diag.r_list.push_back(r);
                }
            } else if (key == "alpha_eps") {
                cfg.diag.alpha_eps.clear();
                for (const std::string& tok : split(val, ',')) {
                    const auto parts = split(tok, ':');
                    if (parts.size() != 2)
                        throw format_error("config: alpha_eps entries are alpha:eps pairs");
                    const double a = parse_double(full, parts[0]);
                    const double e = parse_double(full, parts[1]);
                    if (!(a >= 0.0 && a <= 0.5))
                        throw format_error("config: alpha must lie in [0, 1/2]");
                    if (e < 0.0) throw format_error("config: eps must be >= 0");
                    cfg.diag.alpha_eps.emplace_back(a, e);
                }
                if (cfg.diag.alpha_eps.empty())
                    throw format_error("config: alpha_eps must not be empty");
            } else if (key == "riesz_beta") {
                cfg.diag.riesz_beta = parse_double(full, val);
                if (!(cfg.diag.riesz_beta > 0.0 && cfg.diag.riesz_beta < 3.0))
                    throw format_error("config: riesz_beta must lie in (0, 3)");
            } else if (key == "riesz_images") {
                const long v = parse_long(full, val);
                if (v < 0 || v > 8) throw format_error("config: riesz_images out of range");
                cfg.diag.riesz_images = static_cast<int>(v);
            } else if (key == "holder") {
                cfg.diag.holder = parse_bool(full, val);
            } else if (key == "holder_every") {
                const long v = parse_long(full, val);
                if (v < 1) throw format_error("config: holder_every must be >= 1");
                cfg.diag.holder_every = static_cast<int>(v);
            } else if (key == "holder_pairs") {
                cfg.diag.holder_pairs = parse_long(full, val);
                if (cfg.diag.holder_pairs < 1)
                    throw format_error("config: holder_pairs must be >= 1");
            } else if (key == "holder_bins") {
                const long v = parse_long(full, val);
                if (v < 3 || v > 64) throw format_error("config: holder_bins out of range");
                cfg.diag.holder_bins = static_cast<int>(v);
            } else if (key == "holder_quantile") {
                cfg.diag.holder_quantile = parse_double(full, val);
                if (!(cfg.diag.holder_quantile > 0.0 && cfg.diag.holder_quantile <= 1.0))
                    throw format_error("config: holder_quantile must lie in (0, 1]");
            } else if (key == "holder_kthresh") {
                cfg.diag.holder_k_threshold_rel = parse_double(full, val);
                if (cfg.diag.holder_k_threshold_rel < 0.0)
                    throw format_error("config: holder_kthresh must be >= 0");
            } else if (key == "holder_delta_max") {
                cfg.diag.holder_delta_max = parse_double(full, val);
                if (cfg.diag.holder_delta_max < 0.0)
                    throw format_error("config: holder_delta_max must be >= 0");
            } else if (key == "holder_seed") {
                cfg.diag.holder_seed = static_cast<std::uint64_t>(parse_long(full, val));
            } else {
                throw format_error("config: unknown key " + full);
            }
        } else { // output
            if (key == "checkpoint_every") {
                cfg.checkpoint_every = parse_long(full, val);
                if (cfg.checkpoint_every < 0)
                    throw format_error("config: output.checkpoint_every must be >= 0");
            } else if (key == "prefix") {
                if (val.empty() || val.find('/') != std::string::npos)
                    throw format_error("config: output.prefix must be a bare name");
                cfg.prefix = val;
            } else {
                throw format_error("config: unknown key " + full);
            }
        }
    }
    if (cfg.sim.grid.n == 0) throw format_error("config: [grid] n is required");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw format_error("cannot open config: " + path);
    return parse_config(in);
}

} // namespace vdl
