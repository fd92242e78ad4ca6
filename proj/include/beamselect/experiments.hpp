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

#ifndef BEAMSELECT_EXPERIMENTS_HPP
#define BEAMSELECT_EXPERIMENTS_HPP

#include "beamselect/channel.hpp"
#include "beamselect/dpc_rate.hpp"
#include "beamselect/oracle.hpp"
#include "beamselect/selection.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace beamselect {

// A curve of a sweep: one of the selection algorithms, the rate benchmark, or
// the exhaustive optimum.
enum class Series {
    alg1,
    alg2,
    alg3,
    upper_bound,
    oracle,
};

std::string to_string(Series s);
Series parse_series(const std::string& s);

struct ExperimentConfig {
    ChannelConfig channel{20, 64};   // K = channel.users, N = channel.antennas
    Index m = 8;
    std::vector<double> snr_grid_db{0, 5, 10, 15, 20, 25, 30};
    double snr_point_db = 28;        // single SNR of the M, M-bar and offset sweeps
    std::size_t trials = 500;
    std::uint64_t seed = default_seed;
    std::vector<Series> series{Series::alg1, Series::alg2, Series::alg3, Series::upper_bound};
    RateVariant rate_variant = RateVariant::squared_gain;
    std::optional<Index> mbar_override;
    int offset_count = 3;
    std::vector<Index> m_list;       // empty: 1..min(K, N) in steps of max(1, min(K, N) / 10)
    std::vector<Index> mbar_list;    // empty: m_bar(K, N) + {-6, -4, -2, 0, 2, 4, 6}
    std::vector<Index> runtime_m{16, 24, 32};
    std::vector<Index> equal_complexity_m{16, 24, 32}; // alg1, alg2, alg3
    bool calibrate = false;
    std::uint64_t oracle_budget = default_oracle_budget;

    Index users() const { return channel.users; }
    Index antennas() const { return channel.antennas; }

    void validate() const;
};

// Desk defaults (N = 64, K = 20, M = 8, 500 trials) and the full simulation
// scale (N = 256, K = 40, M = 16, 1000 trials).
ExperimentConfig desk_config();
ExperimentConfig full_config();

struct SweepRow {
    std::string algorithm;
    std::string x_name;           // snr_db, M, mbar, offsets
    double x_value = 0;
    double mean_sum_rate = 0;     // bits/s/Hz
    double std_err = 0;
    double mean_gap = 0;          // mean of (benchmark - rate) over paired trials
    double mean_runtime_s = 0;    // 0 outside runtime measurements
    std::size_t trials = 0;       // feasible trials averaged
    std::uint64_t seed = 0;

    bool operator==(const SweepRow&) const = default;
};

// Mean and standard error of the mean (sample deviation / sqrt(n)).
struct MeanStat {
    double mean = 0;
    double std_err = 0;
    std::size_t n = 0;
};
MeanStat mean_stat(const std::vector<double>& v);

// Per-trial rates of one series; nullopt marks an infeasible trial.
struct SeriesSamples {
    Series series;
    std::vector<std::vector<std::optional<double>>> rate; // [snr][trial]
};

// Runs every series of cfg at M = m over all trials, evaluating each selection
// once and its rate at every SNR in snr_db. Trials run in parallel on
// independent substreams.
std::vector<SeriesSamples> evaluate_trials(const ExperimentConfig& cfg, Index m,
                                           const std::vector<double>& snr_db,
                                           const SelectionOptions& opts);

// Rows of sum rate against SNR.
std::vector<SweepRow> sweep_snr(const ExperimentConfig& cfg);
// Rows against M at snr_point_db.
std::vector<SweepRow> sweep_m(const ExperimentConfig& cfg);
// Algorithm 2 with the case-switch threshold overridden, at snr_point_db.
std::vector<SweepRow> sweep_mbar(const ExperimentConfig& cfg);
// Algorithm 2 with 1, 2 and 3 probed beam offsets, at snr_point_db.
std::vector<SweepRow> sweep_offsets(const ExperimentConfig& cfg);
// Single-threaded wall-clock time per selection for each M in runtime_m.
std::vector<SweepRow> measure_runtime(const ExperimentConfig& cfg);
// Each algorithm at its own M (equal_complexity_m, optionally calibrated so
// that mean runtimes match alg1's within 25%).
std::vector<SweepRow> sweep_equal_complexity(const ExperimentConfig& cfg);

inline constexpr const char* csv_header =
    "algorithm,x_name,x_value,mean_sum_rate,std_err,mean_gap,mean_runtime_s,trials,seed";

// CSV with the config echoed as leading '#' lines.
std::string rows_to_csv(const std::vector<SweepRow>& rows, const std::string& comment = {});
std::vector<SweepRow> rows_from_csv(const std::string& text);

} // namespace beamselect

#endif // BEAMSELECT_EXPERIMENTS_HPP
