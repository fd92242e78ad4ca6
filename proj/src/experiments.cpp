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

#include "beamselect/experiments.hpp"
#include "beamselect/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

namespace beamselect {

namespace {

double db_to_power(double db) { return std::pow(10.0, db / 10.0); }

std::vector<Series> with_bound(std::vector<Series> s)
{
    if (std::find(s.begin(), s.end(), Series::upper_bound) == s.end())
        s.push_back(Series::upper_bound);
    return s;
}

std::optional<Algorithm> algorithm_of(Series s)
{
    switch (s) {
    case Series::alg1: return Algorithm::alg1;
    case Series::alg2: return Algorithm::alg2;
    case Series::alg3: return Algorithm::alg3;
    default: return std::nullopt;
    }
}

const SeriesSamples& find_series(const std::vector<SeriesSamples>& all, Series s)
{
    for (const auto& x : all)
        if (x.series == s)
            return x;
    throw InvalidInput("experiments: series " + to_string(s) + " was not evaluated");
}

// Row of series s at SNR index i; the gap is paired against the benchmark.
SweepRow make_row(const ExperimentConfig& cfg, const std::vector<SeriesSamples>& all, Series s, std::size_t i,
                  const std::string& x_name, double x_value)
{
    const auto& mine = find_series(all, s).rate[i];
    const auto& bound = find_series(all, Series::upper_bound).rate[i];
    std::vector<double> rates;
    std::vector<double> gaps;
    for (std::size_t t = 0; t < mine.size(); ++t) {
        if (!mine[t])
            continue;
        rates.push_back(*mine[t]);
        if (bound[t])
            gaps.push_back(*bound[t] - *mine[t]);
    }
    const MeanStat st = mean_stat(rates);
    SweepRow row;
    row.algorithm = to_string(s);
    row.x_name = x_name;
    row.x_value = x_value;
    row.mean_sum_rate = st.mean;
    row.std_err = st.std_err;
    row.mean_gap = mean_stat(gaps).mean;
    row.trials = st.n;
    row.seed = cfg.seed;
    return row;
}

SelectionOptions options_of(const ExperimentConfig& cfg)
{
    SelectionOptions o;
    o.mbar_override = cfg.mbar_override;
    o.offset_count = cfg.offset_count;
    o.record_trace = false;
    return o;
}

std::vector<Index> default_m_list(const ExperimentConfig& cfg)
{
    const Index top = std::min(cfg.users(), cfg.antennas());
    const Index step = std::max<Index>(1, top / 10);
    std::vector<Index> out;
    for (Index m = step; m <= top; m += step)
        out.push_back(m);
    if (out.back() != top)
        out.push_back(top);
    return out;
}

std::vector<Index> default_mbar_list(const ExperimentConfig& cfg)
{
    const Index mb = static_cast<Index>(m_bar(cfg.users(), cfg.antennas()));
    std::vector<Index> out;
    for (Index d = -6; d <= 6; d += 2)
        if (mb + d >= 1)
            out.push_back(mb + d);
    return out;
}

struct Timing {
    std::vector<double> seconds;
    std::vector<double> rates;
};

// Times select() on trials channels; channel generation and the rate
// evaluation stay outside the timed region. Runs on the calling thread.
std::vector<Timing> time_algorithms(const ExperimentConfig& cfg, const std::vector<Algorithm>& algs,
                                    const std::vector<Index>& ms, std::size_t trials)
{
    using clock = std::chrono::steady_clock;
    const double power = db_to_power(cfg.snr_point_db);
    SelectionOptions opts = options_of(cfg);
    std::vector<Timing> out(algs.size());

    {
        // Warm-up.
        const CMatrix<double> h =
            to_beamspace(generate_channel<double>(cfg.channel, cfg.seed, 0), cfg.channel.scaling).data;
        for (std::size_t a = 0; a < algs.size(); ++a) {
            try {
                (void)select(algs[a], h, ms[a], opts);
            } catch (const SelectionInfeasible&) {
            }
        }
    }

    for (std::size_t t = 0; t < trials; ++t) {
        const CMatrix<double> h =
            to_beamspace(generate_channel<double>(cfg.channel, cfg.seed, t), cfg.channel.scaling).data;
        // Interleave the algorithms so slow drifts of the machine hit all alike.
        for (std::size_t a = 0; a < algs.size(); ++a) {
            SelectionResult sel;
            const auto start = clock::now();
            try {
                sel = select(algs[a], h, ms[a], opts);
            } catch (const SelectionInfeasible&) {
                continue;
            }
            const auto stop = clock::now();
            out[a].seconds.push_back(std::chrono::duration<double>(stop - start).count());
            try {
                out[a].rates.push_back(dpc_sum_rate(h, sel.users, sel.beams, power, cfg.rate_variant).sum_rate);
            } catch (const DegenerateSelection&) {
            }
        }
    }
    return out;
}

double mean_of(const std::vector<double>& v) { return mean_stat(v).mean; }

} // namespace

void ExperimentConfig::validate() const
{
    channel.validate();
    const Index top = std::min(users(), antennas());
    auto check_m = [&](Index v, const char* what) {
        if (v < 1 || v > top)
            throw InvalidConfig(std::string(what) + " = " + std::to_string(v) + " must lie in [1, min(K, N)] = [1, " +
                                std::to_string(top) + "]");
    };
    check_m(m, "M");
    if (trials < 1)
        throw InvalidConfig("trials must be at least 1");
    if (snr_grid_db.empty())
        throw InvalidConfig("snr grid is empty");
    for (double s : snr_grid_db)
        if (!std::isfinite(s))
            throw InvalidConfig("snr values must be finite");
    if (!std::isfinite(snr_point_db))
        throw InvalidConfig("snr_point must be finite");
    if (series.empty())
        throw InvalidConfig("no algorithms selected");
    if (offset_count < 1 || offset_count > 3)
        throw InvalidConfig("offset_count must be 1, 2 or 3");
    if (mbar_override && *mbar_override < 0)
        throw InvalidConfig("mbar_override must be non-negative");
    for (Index v : m_list)
        check_m(v, "m_list entry");
    for (Index v : mbar_list)
        if (v < 0)
            throw InvalidConfig("mbar_list entries must be non-negative");
}

namespace {

void check_m_list(const ExperimentConfig& cfg, const std::vector<Index>& list, const char* what)
{
    const Index top = std::min(cfg.users(), cfg.antennas());
    for (Index v : list)
        if (v < 1 || v > top)
            throw InvalidConfig(std::string(what) + " entry " + std::to_string(v) + " must lie in [1, min(K, N)] = [1, " +
                                std::to_string(top) + "]");
}

} // namespace

ExperimentConfig desk_config() { return ExperimentConfig{}; }

ExperimentConfig full_config()
{
    ExperimentConfig c;
    c.channel.users = 40;
    c.channel.antennas = 256;
    c.m = 16;
    c.trials = 1000;
    return c;
}

MeanStat mean_stat(const std::vector<double>& v)
{
    MeanStat s;
    s.n = v.size();
    if (v.empty())
        return s;
    double sum = 0;
    for (double x : v)
        sum += x;
    s.mean = sum / static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0;
        for (double x : v)
            ss += (x - s.mean) * (x - s.mean);
        s.std_err = std::sqrt(ss / static_cast<double>(s.n - 1) / static_cast<double>(s.n));
    }
    return s;
}

std::vector<SeriesSamples> evaluate_trials(const ExperimentConfig& cfg, Index m, const std::vector<double>& snr_db,
                                           const SelectionOptions& opts)
{
    const std::size_t trials = cfg.trials;
    std::vector<double> powers;
    for (double s : snr_db)
        powers.push_back(db_to_power(s));

    const bool with_oracle = std::find(cfg.series.begin(), cfg.series.end(), Series::oracle) != cfg.series.end();
    if (with_oracle) {
        const auto cost = exhaustive_cost(cfg.users(), cfg.antennas(), m);
        if (cost > cfg.oracle_budget)
            throw BudgetExceeded("oracle series: K=" + std::to_string(cfg.users()) + ", N=" +
                                 std::to_string(cfg.antennas()) + ", M=" + std::to_string(m) + " needs " +
                                 std::to_string(cost) + " evaluations per trial, budget is " +
                                 std::to_string(cfg.oracle_budget));
    }

    std::vector<SeriesSamples> out;
    for (Series s : cfg.series)
        out.push_back({s, std::vector<std::vector<std::optional<double>>>(
                              powers.size(), std::vector<std::optional<double>>(trials))});

    parallel_for(trials, [&](std::size_t t) {
        const CMatrix<double> h =
            to_beamspace(generate_channel<double>(cfg.channel, cfg.seed, t), cfg.channel.scaling).data;
        for (auto& ss : out) {
            try {
                if (ss.series == Series::oracle) {
                    for (std::size_t i = 0; i < powers.size(); ++i)
                        ss.rate[i][t] =
                            exhaustive_select(h, m, powers[i], cfg.rate_variant, cfg.oracle_budget).rate.sum_rate;
                    continue;
                }
                IndexList users;
                IndexList beams;
                if (ss.series == Series::upper_bound) {
                    users = select_users_full_channel(h, m);
                    beams.resize(static_cast<std::size_t>(h.cols()));
                    std::iota(beams.begin(), beams.end(), Index{0});
                } else {
                    SelectionResult sel = select(*algorithm_of(ss.series), h, m, opts);
                    users = std::move(sel.users);
                    beams = std::move(sel.beams);
                }
                const CMatrix<double> a = h(users, beams).adjoint();
                const RVector<double> r = qr_positive_diag(a).diagonal();
                for (std::size_t i = 0; i < powers.size(); ++i)
                    ss.rate[i][t] = rate_from_diagonal(r, powers[i], cfg.rate_variant).sum_rate;
            } catch (const SelectionInfeasible&) {
            } catch (const DegenerateSelection&) {
            }
        }
    });
    return out;
}

std::vector<SweepRow> sweep_snr(const ExperimentConfig& cfg)
{
    cfg.validate();
    ExperimentConfig c = cfg;
    c.series = with_bound(cfg.series);
    const auto samples = evaluate_trials(c, cfg.m, cfg.snr_grid_db, options_of(cfg));
    std::vector<SweepRow> rows;
    for (Series s : cfg.series)
        for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i)
            rows.push_back(make_row(cfg, samples, s, i, "snr_db", cfg.snr_grid_db[i]));
    return rows;
}

std::vector<SweepRow> sweep_m(const ExperimentConfig& cfg)
{
    cfg.validate();
    ExperimentConfig c = cfg;
    c.series = with_bound(cfg.series);
    const std::vector<Index> ms = cfg.m_list.empty() ? default_m_list(cfg) : cfg.m_list;
    std::vector<std::vector<SweepRow>> per_series(cfg.series.size());
    for (Index m : ms) {
        const auto samples = evaluate_trials(c, m, {cfg.snr_point_db}, options_of(cfg));
        for (std::size_t k = 0; k < cfg.series.size(); ++k)
            per_series[k].push_back(make_row(cfg, samples, cfg.series[k], 0, "M", static_cast<double>(m)));
    }
    std::vector<SweepRow> rows;
    for (auto& v : per_series)
        rows.insert(rows.end(), v.begin(), v.end());
    return rows;
}

std::vector<SweepRow> sweep_mbar(const ExperimentConfig& cfg)
{
    cfg.validate();
    ExperimentConfig c = cfg;
    c.series = {Series::alg2, Series::upper_bound};
    const std::vector<Index> list = cfg.mbar_list.empty() ? default_mbar_list(cfg) : cfg.mbar_list;
    std::vector<SweepRow> rows;
    for (Index mb : list) {
        SelectionOptions o = options_of(cfg);
        o.mbar_override = mb;
        const auto samples = evaluate_trials(c, cfg.m, {cfg.snr_point_db}, o);
        rows.push_back(make_row(cfg, samples, Series::alg2, 0, "mbar", static_cast<double>(mb)));
    }
    return rows;
}

std::vector<SweepRow> sweep_offsets(const ExperimentConfig& cfg)
{
    cfg.validate();
    ExperimentConfig c = cfg;
    c.series = {Series::alg2, Series::upper_bound};
    std::vector<SweepRow> rows;
    for (int count = 1; count <= 3; ++count) {
        SelectionOptions o = options_of(cfg);
        o.offset_count = count;
        const auto samples = evaluate_trials(c, cfg.m, {cfg.snr_point_db}, o);
        rows.push_back(make_row(cfg, samples, Series::alg2, 0, "offsets", count));
    }
    return rows;
}

std::vector<SweepRow> measure_runtime(const ExperimentConfig& cfg)
{
    cfg.validate();
    std::vector<Algorithm> algs;
    for (Series s : cfg.series)
        if (auto a = algorithm_of(s))
            algs.push_back(*a);
    if (algs.empty())
        throw InvalidConfig("runtime: no selection algorithm among the configured algorithms");
    check_m_list(cfg, cfg.runtime_m, "runtime_m");

    std::vector<std::vector<SweepRow>> per_alg(algs.size());
    for (Index m : cfg.runtime_m) {
        const std::vector<Index> ms(algs.size(), m);
        const auto timing = time_algorithms(cfg, algs, ms, cfg.trials);
        for (std::size_t a = 0; a < algs.size(); ++a) {
            const MeanStat st = mean_stat(timing[a].rates);
            SweepRow row;
            row.algorithm = to_string(algs[a]);
            row.x_name = "M";
            row.x_value = static_cast<double>(m);
            row.mean_sum_rate = st.mean;
            row.std_err = st.std_err;
            row.mean_runtime_s = mean_of(timing[a].seconds);
            row.trials = timing[a].seconds.size();
            row.seed = cfg.seed;
            per_alg[a].push_back(row);
        }
    }
    std::vector<SweepRow> rows;
    for (auto& v : per_alg)
        rows.insert(rows.end(), v.begin(), v.end());
    return rows;
}

std::vector<SweepRow> sweep_equal_complexity(const ExperimentConfig& cfg)
{
    cfg.validate();
    if (cfg.equal_complexity_m.size() != 3)
        throw InvalidConfig("equal_complexity_m needs three entries (alg1, alg2, alg3)");
    check_m_list(cfg, cfg.equal_complexity_m, "equal_complexity_m");
    const std::vector<Algorithm> algs{Algorithm::alg1, Algorithm::alg2, Algorithm::alg3};
    std::vector<Index> ms = cfg.equal_complexity_m;

    if (cfg.calibrate) {
        // Grow alg2's and alg3's M until their runtime reaches alg1's.
        constexpr std::size_t probe_trials = 20;
        const double target = mean_of(time_algorithms(cfg, {algs[0]}, {ms[0]}, probe_trials)[0].seconds);
        const Index top = std::min(cfg.users(), cfg.antennas());
        for (std::size_t a = 1; a < algs.size(); ++a) {
            Index best = ms[0];
            double best_err = std::numeric_limits<double>::infinity();
            for (Index m = ms[0]; m <= top; ++m) {
                const double t = mean_of(time_algorithms(cfg, {algs[a]}, {m}, probe_trials)[0].seconds);
                const double err = std::abs(t - target);
                if (err < best_err) {
                    best_err = err;
                    best = m;
                }
                if (t > target)
                    break;
            }
            ms[a] = best;
        }
    }

    const auto timing = time_algorithms(cfg, algs, ms, cfg.trials);
    std::vector<SweepRow> rows;
    for (std::size_t a = 0; a < algs.size(); ++a) {
        const MeanStat st = mean_stat(timing[a].rates);
        SweepRow row;
        row.algorithm = to_string(algs[a]);
        row.x_name = "M";
        row.x_value = static_cast<double>(ms[a]);
        row.mean_sum_rate = st.mean;
        row.std_err = st.std_err;
        row.mean_runtime_s = mean_of(timing[a].seconds);
        row.trials = timing[a].seconds.size();
        row.seed = cfg.seed;
        rows.push_back(row);
    }
    return rows;
}

std::string rows_to_csv(const std::vector<SweepRow>& rows, const std::string& comment)
{
    std::string out;
    std::istringstream cs(comment);
    for (std::string line; std::getline(cs, line);)
        out += "# " + line + "\n";
    out += csv_header;
    out += '\n';
    char buf[512];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%zu,%llu\n", r.algorithm.c_str(),
                      r.x_name.c_str(), r.x_value, r.mean_sum_rate, r.std_err, r.mean_gap, r.mean_runtime_s,
                      r.trials, static_cast<unsigned long long>(r.seed));
        out += buf;
    }
    return out;
}

std::vector<SweepRow> rows_from_csv(const std::string& text)
{
    std::istringstream is(text);
    std::vector<SweepRow> rows;
    bool header = false;
    std::size_t lineno = 0;
    for (std::string line; std::getline(is, line);) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        if (!header) {
            if (line != csv_header)
                throw InvalidInput("csv: unexpected header on line " + std::to_string(lineno));
            header = true;
            continue;
        }
        std::vector<std::string> f;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');)
            f.push_back(cell);
        if (f.size() != 9)
            throw InvalidInput("csv: line " + std::to_string(lineno) + " has " + std::to_string(f.size()) +
                               " fields, expected 9");
        try {
            SweepRow r;
            r.algorithm = f[0];
            r.x_name = f[1];
            r.x_value = std::stod(f[2]);
            r.mean_sum_rate = std::stod(f[3]);
            r.std_err = std::stod(f[4]);
            r.mean_gap = std::stod(f[5]);
            r.mean_runtime_s = std::stod(f[6]);
            r.trials = std::stoull(f[7]);
            r.seed = std::stoull(f[8]);
            rows.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw InvalidInput("csv: malformed number on line " + std::to_string(lineno));
        }
    }
    if (!header)
        throw InvalidInput("csv: missing header");
    return rows;
}

} // namespace beamselect
