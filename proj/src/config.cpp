// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The beamselect authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "beamselect/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace beamselect {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string part; std::getline(is, part, sep);) {
        part = trim(part);
        if (!part.empty())
            out.push_back(part);
    }
    return out;
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

long long parse_int(const std::string& key, const std::string& v)
{
    errno = 0;
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || *end != '\0' || errno != 0)
        throw InvalidConfig(key + ": '" + v + "' is not an integer");
    return x;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v)
{
    errno = 0;
    char* end = nullptr;
    if (v.empty() || v[0] == '-')
        throw InvalidConfig(key + ": '" + v + "' is not a non-negative integer");
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (*end != '\0' || errno != 0)
        throw InvalidConfig(key + ": '" + v + "' is not a non-negative integer");
    return x;
}

int parse_positive(const std::string& key, const std::string& v)
{
    const long long x = parse_int(key, v);
    if (x < 1 || x > 1'000'000)
        throw InvalidConfig(key + ": " + v + " must be a positive integer");
    return static_cast<int>(x);
}

double parse_real(const std::string& key, const std::string& v)
{
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0' || errno != 0 || !std::isfinite(x))
        throw InvalidConfig(key + ": '" + v + "' is not a finite number");
    return x;
}

bool parse_bool(const std::string& key, const std::string& v)
{
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw InvalidConfig(key + ": '" + v + "' is not a boolean");
}

// "a:step:b" or a comma list.
std::vector<double> parse_grid(const std::string& key, const std::string& v)
{
    const auto colon = split(v, ':');
    if (colon.size() == 3) {
        const double a = parse_real(key, colon[0]);
        const double step = parse_real(key, colon[1]);
        const double b = parse_real(key, colon[2]);
        if (!(step > 0) || b < a)
            throw InvalidConfig(key + ": range '" + v + "' needs step > 0 and end >= start");
        std::vector<double> out;
        for (long i = 0;; ++i) {
            const double x = a + static_cast<double>(i) * step;
            if (x > b + 1e-9 * step)
                break;
            out.push_back(x);
        }
        return out;
    }
    std::vector<double> out;
    for (const auto& p : split(v, ','))
        out.push_back(parse_real(key, p));
    if (out.empty())
        throw InvalidConfig(key + ": empty list");
    return out;
}

std::vector<Index> parse_index_list(const std::string& key, const std::string& v)
{
    std::vector<Index> out;
    if (v == "auto")
        return out;
    for (const auto& p : split(v, ','))
        out.push_back(static_cast<Index>(parse_int(key, p)));
    return out;
}

std::string join_reals(const std::vector<double>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + fmt(v[i]);
    return s;
}

std::string join_indices(const std::vector<Index>& v)
{
    if (v.empty())
        return "auto";
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::vector<ConfigKey> build_keys()
{
    std::vector<ConfigKey> k;
    auto add = [&](std::string section, std::string name, std::string full, std::string help, auto get, auto set) {
        k.push_back({std::move(section), std::move(name), std::move(full), std::move(help), get, set});
    };
    using R = RunConfig;
    using S = const std::string&;

    add("system", "N", "256", "antennas = DFT beams",
        [](const R& c) { return std::to_string(c.experiment.channel.antennas); },
        [](R& c, S v) { c.experiment.channel.antennas = parse_positive("N", v); });
    add("system", "K", "40", "total users",
        [](const R& c) { return std::to_string(c.experiment.channel.users); },
        [](R& c, S v) { c.experiment.channel.users = parse_positive("K", v); });
    add("system", "M", "16", "RF chains = selected users = selected beams",
        [](const R& c) { return std::to_string(c.experiment.m); },
        [](R& c, S v) { c.experiment.m = parse_positive("M", v); });
    add("system", "seed", "", "master seed, or 'random'",
        [](const R& c) { return std::to_string(c.experiment.seed); },
        [](R& c, S v) {
            if (v == "random") {
                std::random_device rd;
                c.experiment.seed = (std::uint64_t{rd()} << 32) ^ rd();
            } else {
                c.experiment.seed = parse_u64("seed", v);
            }
        });
    add("system", "algorithm", "", "algorithm used by select: alg1, alg2, alg3",
        [](const R& c) { return to_string(c.algorithm); },
        [](R& c, S v) { c.algorithm = parse_algorithm(v); });

    add("channel", "paths", "3", "paths per user; the first is LoS",
        [](const R& c) { return std::to_string(c.experiment.channel.paths); },
        [](R& c, S v) { c.experiment.channel.paths = parse_positive("paths", v); });
    add("channel", "los_power_db", "0", "LoS path power",
        [](const R& c) { return fmt(c.experiment.channel.los_power_db); },
        [](R& c, S v) { c.experiment.channel.los_power_db = parse_real("los_power_db", v); });
    add("channel", "nlos_power_db", "-10", "NLoS path power",
        [](const R& c) { return fmt(c.experiment.channel.nlos_power_db); },
        [](R& c, S v) { c.experiment.channel.nlos_power_db = parse_real("nlos_power_db", v); });
    add("channel", "gain_model", "constant_modulus", "constant_modulus or rayleigh",
        [](const R& c) { return to_string(c.experiment.channel.gain_model); },
        [](R& c, S v) { c.experiment.channel.gain_model = parse_gain_model(v); });
    add("channel", "scaling", "inverse_n", "DFT scaling: inverse_n or unitary",
        [](const R& c) { return to_string(c.experiment.channel.scaling); },
        [](R& c, S v) { c.experiment.channel.scaling = parse_dft_scaling(v); });

    add("experiment", "trials", "1000", "Monte Carlo trials",
        [](const R& c) { return std::to_string(c.experiment.trials); },
        [](R& c, S v) { c.experiment.trials = static_cast<std::size_t>(parse_positive("trials", v)); });
    add("experiment", "snr_db", "0:5:30", "SNR grid in dB: start:step:end or a comma list (noise power 1)",
        [](const R& c) { return join_reals(c.experiment.snr_grid_db); },
        [](R& c, S v) { c.experiment.snr_grid_db = parse_grid("snr_db", v); });
    add("experiment", "snr_point_db", "28", "SNR of the M, M-bar and offset sweeps",
        [](const R& c) { return fmt(c.experiment.snr_point_db); },
        [](R& c, S v) { c.experiment.snr_point_db = parse_real("snr_point_db", v); });
    add("experiment", "algorithms", "", "comma list of alg1, alg2, alg3, upper_bound, oracle",
        [](const R& c) {
            std::string s;
            for (std::size_t i = 0; i < c.experiment.series.size(); ++i)
                s += (i ? "," : "") + to_string(c.experiment.series[i]);
            return s;
        },
        [](R& c, S v) {
            std::vector<Series> s;
            for (const auto& p : split(v, ','))
                s.push_back(parse_series(p));
            if (s.empty())
                throw InvalidConfig("algorithms: empty list");
            c.experiment.series = s;
        });
    add("experiment", "rate_variant", "", "squared_gain (gain r^2) or linear_gain (gain r)",
        [](const R& c) { return to_string(c.experiment.rate_variant); },
        [](R& c, S v) { c.experiment.rate_variant = parse_rate_variant(v); });
    add("experiment", "mbar_override", "", "case-switch threshold of algorithm 2, or 'none' for floor(KN/(K+N))",
        [](const R& c) {
            return c.experiment.mbar_override ? std::to_string(*c.experiment.mbar_override) : std::string("none");
        },
        [](R& c, S v) {
            if (v == "none")
                c.experiment.mbar_override.reset();
            else
                c.experiment.mbar_override = static_cast<Index>(parse_int("mbar_override", v));
        });
    add("experiment", "offset_count", "3", "beam offsets probed in case 2: 1 {0}, 2 {0,+1}, 3 {0,+1,-1}",
        [](const R& c) { return std::to_string(c.experiment.offset_count); },
        [](R& c, S v) { c.experiment.offset_count = static_cast<int>(parse_int("offset_count", v)); });
    add("experiment", "m_list", "", "M values of sweep-m, or 'auto'",
        [](const R& c) { return join_indices(c.experiment.m_list); },
        [](R& c, S v) { c.experiment.m_list = parse_index_list("m_list", v); });
    add("experiment", "mbar_list", "", "threshold values of sweep-mbar, or 'auto' (floor(KN/(K+N)) +- 0..6)",
        [](const R& c) { return join_indices(c.experiment.mbar_list); },
        [](R& c, S v) { c.experiment.mbar_list = parse_index_list("mbar_list", v); });
    add("experiment", "runtime_m", "16,24,32", "M values of the runtime measurement",
        [](const R& c) { return join_indices(c.experiment.runtime_m); },
        [](R& c, S v) { c.experiment.runtime_m = parse_index_list("runtime_m", v); });
    add("experiment", "equal_complexity_m", "16,24,32", "M of alg1, alg2, alg3 in equal-complexity",
        [](const R& c) { return join_indices(c.experiment.equal_complexity_m); },
        [](R& c, S v) { c.experiment.equal_complexity_m = parse_index_list("equal_complexity_m", v); });
    add("experiment", "calibrate", "", "equal-complexity: search M of alg2/alg3 to match alg1's runtime",
        [](const R& c) { return std::string(c.experiment.calibrate ? "true" : "false"); },
        [](R& c, S v) { c.experiment.calibrate = parse_bool("calibrate", v); });
    add("experiment", "oracle_budget", "", "maximum exhaustive evaluations per trial",
        [](const R& c) { return std::to_string(c.experiment.oracle_budget); },
        [](R& c, S v) { c.experiment.oracle_budget = parse_u64("oracle_budget", v); });
    return k;
}

const ConfigKey& find_key(const std::string& name)
{
    for (const auto& k : config_keys())
        if (k.name == name)
            return k;
    throw InvalidConfig("unknown config key '" + name + "'");
}

} // namespace

const std::vector<ConfigKey>& config_keys()
{
    static const std::vector<ConfigKey> keys = build_keys();
    return keys;
}

void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin)
{
    std::istringstream is(text);
    std::string section;
    std::size_t lineno = 0;
    for (std::string line; std::getline(is, line);) {
        ++lineno;
        const auto c = line.find_first_of("#;");
        if (c != std::string::npos)
            line.erase(c);
        line = trim(line);
        if (line.empty())
            continue;
        const std::string where = origin + ":" + std::to_string(lineno) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']')
                throw InvalidConfig(where + "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "system" && section != "channel" && section != "experiment")
                throw InvalidConfig(where + "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidConfig(where + "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        try {
            const ConfigKey& k = find_key(key);
            if (!section.empty() && k.section != section)
                throw InvalidConfig("key '" + key + "' belongs to [" + k.section + "], not [" + section + "]");
            k.set(cfg, trim(line.substr(eq + 1)));
        } catch (const InvalidConfig& e) {
            throw InvalidConfig(where + e.what());
        } catch (const InvalidInput& e) {
            throw InvalidConfig(where + e.what());
        }
    }
}

void apply_config_file(RunConfig& cfg, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidConfig("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    apply_config_text(cfg, ss.str(), path);
}

void apply_override(RunConfig& cfg, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw InvalidConfig("override '" + assignment + "' is not key=value");
    const std::string key = trim(assignment.substr(0, eq));
    try {
        find_key(key).set(cfg, trim(assignment.substr(eq + 1)));
    } catch (const InvalidInput& e) {
        throw InvalidConfig(std::string("override: ") + e.what());
    }
}

std::string config_text(const RunConfig& cfg)
{
    std::string out;
    std::string section;
    for (const auto& k : config_keys()) {
        if (k.section != section) {
            section = k.section;
            out += "[" + section + "]\n";
        }
        out += k.name + " = " + k.get(cfg) + "\n";
    }
    return out;
}

std::string config_help()
{
    const RunConfig desk;
    std::string out = "Config keys (file sections [system], [channel], [experiment]; overrides use bare keys):\n";
    char buf[512];
    std::snprintf(buf, sizeof buf, "  %-20s %-12s %-26s %-18s %s\n", "key", "section", "desk default",
                  "simulation default", "meaning");
    out += buf;
    for (const auto& k : config_keys()) {
        std::snprintf(buf, sizeof buf, "  %-20s %-12s %-26s %-18s %s\n", k.name.c_str(), k.section.c_str(),
                      k.get(desk).c_str(), k.full_default.empty() ? "-" : k.full_default.c_str(), k.help.c_str());
        out += buf;
    }
    return out;
}

} // namespace beamselect
