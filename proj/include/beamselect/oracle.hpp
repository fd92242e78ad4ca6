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

#ifndef BEAMSELECT_ORACLE_HPP
#define BEAMSELECT_ORACLE_HPP

#include "beamselect/channel.hpp"
#include "beamselect/dpc_rate.hpp"
#include "beamselect/selection.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace beamselect {

inline constexpr std::uint64_t default_seed = 20240917;
inline constexpr std::uint64_t default_oracle_budget = 1'000'000;

struct OracleInstance {
    std::uint64_t trial = 0;
    bool passed = false;
    bool excluded = false;
    double violation = 0;
    std::string note;
};

struct OracleReport {
    std::string claim_id;
    std::size_t instances = 0; // evaluated, excluding excluded ones
    std::size_t passes = 0;
    std::size_t excluded = 0;
    double pass_fraction = 0;
    double worst_violation = 0;
    std::map<std::string, double> metrics;
    std::vector<OracleInstance> details;

    // Recomputes the counters from details.
    void tally();
};

// ---------------------------------------------------------------------------
// Exhaustive joint selection

struct ExhaustiveResult {
    SelectionResult selection;
    RateReport<double> rate;
    std::uint64_t evaluated = 0;
};

// Number of (user subset, encoding order, beam subset) triples:
// C(K, M) * M! * C(N, M), saturating at UINT64_MAX.
std::uint64_t exhaustive_cost(Index users, Index beams, Index m);

// Enumerates every user subset of size M in every DPC encoding order together
// with every beam subset of size M and returns the best rate. Ties keep the
// lexicographically smallest (users, beams). Throws BudgetExceeded when the
// enumeration would exceed budget.
ExhaustiveResult exhaustive_select(const CMatrix<double>& h, Index m, double power,
                                   RateVariant variant = RateVariant::squared_gain,
                                   std::uint64_t budget = default_oracle_budget);

// ---------------------------------------------------------------------------
// Verifiers. All are deterministic given the seed.

// prod r_u against sqrt(det(G G^H)) on random complex U x B matrices,
// 1 <= U <= B <= max_dim. Relative tolerance 1e-9.
OracleReport verify_qr_det_identity(std::size_t trials, std::uint64_t seed = default_seed,
                                    Index max_dim = 16);

// Random user sets of size M with nested beam chains of sizes M..N: det of
// the Gram matrix is non-decreasing (relative 1e-12) and the DPC rate at
// power P is non-decreasing (absolute 1e-6).
OracleReport verify_beam_monotonicity(std::size_t trials, const ChannelConfig& channel, Index m,
                                      double power, std::uint64_t seed = default_seed);

// Greedy-nested user sets of sizes 1..M_max on all beams: the rate strictly
// increases with every added user. Instances whose allocation is not fully
// active at some size are excluded.
OracleReport verify_user_monotonicity(std::size_t trials, const ChannelConfig& channel, Index m_max,
                                      double power, std::uint64_t seed = default_seed);

// Frequency with which the next user of the full-channel greedy user
// selection has its strongest beam among the strongest beams of the users
// already selected. A run passes when its frequency is below threshold.
OracleReport verify_shared_beam_probability(const ChannelConfig& channel, Index m, std::size_t trials,
                                            double threshold, std::uint64_t seed = default_seed);

// Mean absolute normalized cross-correlation between pairs of rows.
double mean_cross_correlation(const CMatrix<double>& rows);

// Mean cross-correlation of the selected users' channels on the selected
// beams (algorithm 2), for each N in n_list; passes when strictly decreasing.
OracleReport verify_asymptotic_orthogonality(const std::vector<Index>& n_list, const ChannelConfig& channel,
                                             Index m, std::size_t trials, std::uint64_t seed = default_seed);

// K = M: fraction of trials where algorithm 2's rate does not exceed
// algorithm 1's (tolerance 1e-9).
OracleReport verify_k_equals_m(const ChannelConfig& channel, double power, std::size_t trials,
                               std::uint64_t seed = default_seed);

// Constructed instance with K users on distinct DFT grid frequencies
// u_k = 2 pi p_k / N, one path each with modulus in [0.5, 1.5] and uniform
// phase. Each beamspace row has a single non-zero entry at beam p_k.
struct OrthogonalInstance {
    CMatrix<double> h;   // beamspace channel
    IndexList grid_beams; // p_k per user
};

OrthogonalInstance orthogonal_instance(Index users, Index n, std::uint64_t seed, std::uint64_t trial,
                                       DftScaling scaling = DftScaling::inverse_n);

// On orthogonal instances with M = K every algorithm must select all users on
// their grid beams and match the rate benchmark within 1e-9; when affordable
// the exhaustive optimum is checked too.
OracleReport verify_orthogonal_optimality(std::size_t trials, Index users, Index n, double power,
                                          std::uint64_t seed = default_seed,
                                          std::uint64_t budget = default_oracle_budget);

// Exhaustive optimum against the three algorithms and the rate benchmark.
// An instance passes when the optimum is at least every algorithm's rate
// (tolerance 1e-9). Metrics carry the fraction of trials where each
// algorithm stays below the benchmark + 1e-6 and mean rate ratios.
OracleReport compare_with_oracle(const ChannelConfig& channel, Index m, double power, std::size_t trials,
                                 std::uint64_t seed = default_seed,
                                 std::uint64_t budget = default_oracle_budget,
                                 RateVariant variant = RateVariant::squared_gain);

} // namespace beamselect

#endif // BEAMSELECT_ORACLE_HPP
