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

// Command-line front end. Every subcommand is a thin adapter over the library.

#include "beamselect/channel_io.hpp"
#include "beamselect/config.hpp"
#include "beamselect/experiments.hpp"
#include "beamselect/oracle.hpp"
#include "beamselect/output.hpp"
#include "beamselect/serialize.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>

namespace bs = beamselect;

namespace {

enum Exit { ok = 0, other = 1, config_error = 2, infeasible = 3, budget = 4 };

struct Common {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string output;
    std::string format; // empty: json for reports and selections, csv for sweeps
    std::string seed;
    bool full = false;
};

struct Extra {
    std::string claim;
    std::size_t trials = 0; // 0: from config
    double power = 1000;
    double threshold = 0.15;
    std::string n_list = "32,128,512";
    std::uint64_t trial = 0;
    std::string channel_path;
};

bs::RunConfig load(const Common& c)
{
    bs::RunConfig cfg;
    if (c.full)
        cfg.experiment = bs::full_config();
    if (!c.config_path.empty())
        bs::apply_config_file(cfg, c.config_path);
    for (const auto& o : c.overrides)
        bs::apply_override(cfg, o);
    if (!c.seed.empty())
        bs::apply_override(cfg, "seed=" + c.seed);
    cfg.experiment.validate();
    if (c.format != "csv" && c.format != "json")
        throw bs::InvalidConfig("--format must be csv or json");
    return cfg;
}

void write_rows(const Common& c, const bs::RunConfig& cfg, const std::vector<bs::SweepRow>& rows)
{
    const std::string body = c.format == "json" ? bs::rows_to_json(rows, cfg)
                                                : bs::rows_to_csv(rows, bs::config_text(cfg));
    bs::write_file_atomic(c.output, body);
    std::printf("%-12s %-8s %12s %10s %10s %12s %7s\n", "algorithm", "x", "sum_rate", "std_err", "gap",
                "runtime_s", "trials");
    for (const auto& r : rows)
        std::printf("%-12s %-8g %12.4f %10.4f %10.4f %12.3e %7zu\n", r.algorithm.c_str(), r.x_value,
                    r.mean_sum_rate, r.std_err, r.mean_gap, r.mean_runtime_s, r.trials);
    std::printf("wrote %zu rows to %s\n", rows.size(), c.output.c_str());
}

void require_json(const Common& c, const char* what)
{
    if (c.format != "json")
        throw bs::InvalidConfig(std::string(what) + " writes JSON only; pass --format json");
}

void write_report(const Common& c, const bs::RunConfig& cfg, const bs::OracleReport& rep)
{
    bs::write_file_atomic(c.output, bs::to_json(rep, cfg));
    std::printf("%s: %zu/%zu passed (pass fraction %.6f), %zu excluded, worst violation %.3e\n",
                rep.claim_id.c_str(), rep.passes, rep.instances, rep.pass_fraction, rep.excluded,
                rep.worst_violation);
    for (const auto& [k, v] : rep.metrics)
        std::printf("  %s = %.6g\n", k.c_str(), v);
    std::printf("wrote %s\n", c.output.c_str());
}

std::vector<bs::Index> parse_n_list(const std::string& s)
{
    std::vector<bs::Index> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto next = s.find(',', pos);
        const std::string part = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        try {
            out.push_back(std::stol(part));
        } catch (const std::exception&) {
            throw bs::InvalidConfig("--n-list: '" + part + "' is not an integer");
        }
        if (next == std::string::npos)
            break;
        pos = next + 1;
    }
    return out;
}

int run(const std::string& cmd, const Common& c, const Extra& x)
{
    const bs::RunConfig cfg = load(c);
    const auto& e = cfg.experiment;
    const std::size_t trials = x.trials ? x.trials : e.trials;

    if (cmd == "select") {
        require_json(c, "select");
        bs::CMatrix<double> h;
        if (!x.channel_path.empty()) {
            h = bs::load_channel(x.channel_path).data;
        } else {
            h = bs::to_beamspace(bs::generate_channel<double>(e.channel, e.seed, x.trial), e.channel.scaling).data;
        }
        bs::SelectionOptions opts;
        opts.mbar_override = e.mbar_override;
        opts.offset_count = e.offset_count;
        bs::SelectionDocument doc;
        doc.algorithm = bs::to_string(cfg.algorithm);
        doc.trial = x.trial;
        doc.snr_db = e.snr_point_db;
        doc.result = bs::select(cfg.algorithm, h, e.m, opts);
        doc.sum_rate = bs::dpc_sum_rate(h, doc.result.users, doc.result.beams, std::pow(10.0, e.snr_point_db / 10),
                                        e.rate_variant)
                           .sum_rate;
        bs::write_file_atomic(c.output, bs::to_json(doc, cfg));
        std::printf("%s selected %zu users and %zu beams; sum rate %.4f bits/s/Hz at %g dB\nwrote %s\n",
                    doc.algorithm.c_str(), doc.result.users.size(), doc.result.beams.size(), doc.sum_rate,
                    e.snr_point_db, c.output.c_str());
        return ok;
    }
    if (cmd == "gen-channel") {
        const auto h = bs::to_beamspace(bs::generate_channel<double>(e.channel, e.seed, x.trial), e.channel.scaling);
        bs::save_channel(c.output, h);
        std::printf("wrote %ldx%ld beamspace channel (trial %llu) to %s\n", static_cast<long>(h.users()),
                    static_cast<long>(h.beams()), static_cast<unsigned long long>(x.trial), c.output.c_str());
        return ok;
    }
    if (cmd == "sweep-snr")
        return write_rows(c, cfg, bs::sweep_snr(e)), ok;
    if (cmd == "sweep-m")
        return write_rows(c, cfg, bs::sweep_m(e)), ok;
    if (cmd == "sweep-mbar")
        return write_rows(c, cfg, bs::sweep_mbar(e)), ok;
    if (cmd == "sweep-offsets")
        return write_rows(c, cfg, bs::sweep_offsets(e)), ok;
    if (cmd == "runtime") {
        bs::ExperimentConfig ec = e;
        ec.trials = trials;
        return write_rows(c, cfg, bs::measure_runtime(ec)), ok;
    }
    if (cmd == "equal-complexity") {
        bs::ExperimentConfig ec = e;
        ec.trials = trials;
        return write_rows(c, cfg, bs::sweep_equal_complexity(ec)), ok;
    }
    if (cmd == "oracle-compare") {
        require_json(c, "oracle-compare");
        write_report(c, cfg,
                     bs::compare_with_oracle(e.channel, e.m, std::pow(10.0, e.snr_point_db / 10), trials, e.seed,
                                             e.oracle_budget, e.rate_variant));
        return ok;
    }
    if (cmd == "verify") {
        require_json(c, "verify");
        bs::OracleReport rep;
        if (x.claim == "qr-det") {
            rep = bs::verify_qr_det_identity(trials, e.seed);
        } else if (x.claim == "beam-monotonicity") {
            rep = bs::verify_beam_monotonicity(trials, e.channel, e.m, x.power, e.seed);
        } else if (x.claim == "user-monotonicity") {
            rep = bs::verify_user_monotonicity(trials, e.channel, e.m, x.power, e.seed);
        } else if (x.claim == "shared-beam") {
            rep = bs::verify_shared_beam_probability(e.channel, e.m, trials, x.threshold, e.seed);
        } else if (x.claim == "orthogonality") {
            rep = bs::verify_asymptotic_orthogonality(parse_n_list(x.n_list), e.channel, e.m, trials, e.seed);
        } else if (x.claim == "k-equals-m") {
            bs::ChannelConfig ch = e.channel;
            ch.users = static_cast<int>(e.m);
            rep = bs::verify_k_equals_m(ch, x.power, trials, e.seed);
        } else if (x.claim == "orthogonal-optimality") {
            rep = bs::verify_orthogonal_optimality(trials, e.m, e.antennas(), x.power, e.seed, e.oracle_budget);
        } else {
            throw bs::InvalidConfig("unknown claim '" + x.claim + "'");
        }
        write_report(c, cfg, rep);
        return ok;
    }
    throw bs::InvalidConfig("unknown subcommand '" + cmd + "'");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Joint user and beam selection for beamspace massive MIMO under dirty paper coding"};
    app.footer("\n" + bs::config_help() +
               "\nExit status: 0 success, 1 other error, 2 config error, 3 infeasible selection, 4 oracle budget.\n"
               "BEAMSELECT_THREADS caps the worker threads.");
    app.require_subcommand(1);

    Common common;
    Extra extra;
    std::map<std::string, CLI::App*> subs;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"select", "select users and beams on one channel draw (JSON)"},
        {"sweep-snr", "sum rate against SNR"},
        {"sweep-m", "sum rate and gap against M"},
        {"sweep-mbar", "algorithm 2 gap against the case-switch threshold"},
        {"sweep-offsets", "algorithm 2 against the number of probed beam offsets"},
        {"runtime", "single-threaded runtime per selection"},
        {"equal-complexity", "each algorithm at its own M"},
        {"verify", "run a verifier (JSON report)"},
        {"oracle-compare", "exhaustive optimum against the algorithms (JSON report)"},
        {"gen-channel", "write one beamspace channel draw as a binary file"},
    };
    for (const auto& [name, help] : commands) {
        auto* s = app.add_subcommand(name, help);
        s->add_option("--config", common.config_path, "config file")->check(CLI::ExistingFile);
        s->add_option("--overrides", common.overrides, "key=value overrides")->expected(0, -1);
        s->add_option("--output,-o", common.output, "output file")->required();
        s->add_option("--format", common.format, "csv or json (default: json for select, verify, oracle-compare)");
        s->add_option("--seed", common.seed, "master seed or 'random'");
        s->add_flag("--full", common.full, "simulation-scale defaults (N=256, K=40, M=16, 1000 trials)");
        subs[name] = s;
    }
    subs["select"]->add_option("--trial", extra.trial, "channel draw index");
    subs["select"]->add_option("--channel", extra.channel_path, "binary channel file instead of a draw")
        ->check(CLI::ExistingFile);
    subs["gen-channel"]->add_option("--trial", extra.trial, "channel draw index");
    subs["verify"]
        ->add_option("--claim", extra.claim,
                     "qr-det | beam-monotonicity | user-monotonicity | shared-beam | orthogonality | k-equals-m | "
                     "orthogonal-optimality")
        ->required();
    for (const char* name : {"verify", "oracle-compare", "runtime", "equal-complexity"})
        subs[name]->add_option("--trials", extra.trials, "number of instances (default: config trials)");
    subs["verify"]->add_option("--power", extra.power, "linear transmit power for rate claims")->default_val(1000);
    subs["verify"]->add_option("--threshold", extra.threshold, "shared-beam frequency threshold")->default_val(0.15);
    subs["verify"]->add_option("--n-list", extra.n_list, "antenna counts of the orthogonality claim");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    std::string cmd;
    for (const auto& [name, s] : subs)
        if (s->parsed())
            cmd = name;
    if (common.format.empty())
        common.format = cmd == "select" || cmd == "verify" || cmd == "oracle-compare" ? "json" : "csv";

    try {
        return run(cmd, common, extra);
    } catch (const bs::InvalidConfig& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return config_error;
    } catch (const bs::SelectionInfeasible& e) {
        std::fprintf(stderr, "infeasible selection: %s\n", e.what());
        return infeasible;
    } catch (const bs::DegenerateSelection& e) {
        std::fprintf(stderr, "infeasible selection: %s\n", e.what());
        return infeasible;
    } catch (const bs::BudgetExceeded& e) {
        std::fprintf(stderr, "oracle budget exceeded: %s\n", e.what());
        return budget;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return other;
    }
}
