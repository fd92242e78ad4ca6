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

#include "beamselect/oracle.hpp"
#include "beamselect/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace beamselect {

namespace {

// Lanes above the user range so they never collide with channel substreams.
constexpr std::uint64_t lane_aux = 0xA0000000ULL;

bool next_combination(IndexList& c, Index n)
{
    const Index m = static_cast<Index>(c.size());
    Index i = m - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - m + i)
        --i;
    if (i < 0)
        return false;
    ++c[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < m; ++j)
        c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

IndexList iota_list(Index n)
{
    IndexList v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), Index{0});
    return v;
}

// Fisher-Yates shuffle of [0, n), first m entries returned.
IndexList random_subset(Stream& rng, Index n, Index m)
{
    IndexList v = iota_list(n);
    for (Index i = 0; i < m; ++i) {
        const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
    }
    v.resize(static_cast<std::size_t>(m));
    return v;
}

CMatrix<double> beamspace_of(const ChannelConfig& ch, std::uint64_t seed, std::uint64_t trial)
{
    return to_beamspace(generate_channel<double>(ch, seed, trial), ch.scaling).data;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // r * (n - k + i) / i stays integral at every step.
        const std::uint64_t num = n - k + i;
        const std::uint64_t g = std::gcd(r, i);
        const std::uint64_t r2 = r / g;
        const std::uint64_t i2 = i / g;
        r = saturating_mul(r2, num / i2);
        if (r == std::numeric_limits<std::uint64_t>::max())
            return r;
    }
    return r;
}

} // namespace

void OracleReport::tally()
{
    instances = passes = excluded = 0;
    worst_violation = 0;
    for (const auto& d : details) {
        if (d.excluded) {
            ++excluded;
            continue;
        }
        ++instances;
        if (d.passed)
            ++passes;
        worst_violation = std::max(worst_violation, d.violation);
    }
    pass_fraction = instances ? static_cast<double>(passes) / static_cast<double>(instances) : 0.0;
}

std::uint64_t exhaustive_cost(Index users, Index beams, Index m)
{
    std::uint64_t perms = 1;
    for (Index i = 2; i <= m; ++i)
        perms = saturating_mul(perms, static_cast<std::uint64_t>(i));
    const auto c_users = binomial(static_cast<std::uint64_t>(users), static_cast<std::uint64_t>(m));
    const auto c_beams = binomial(static_cast<std::uint64_t>(beams), static_cast<std::uint64_t>(m));
    return saturating_mul(saturating_mul(c_users, perms), c_beams);
}

ExhaustiveResult exhaustive_select(const CMatrix<double>& h, Index m, double power, RateVariant variant,
                                   std::uint64_t budget)
{
    const Index k = h.rows();
    const Index n = h.cols();
    if (m < 1 || m > std::min(k, n))
        throw InvalidInput("exhaustive_select: M must lie in [1, min(K, N)]");
    const std::uint64_t cost = exhaustive_cost(k, n, m);
    if (cost > budget)
        throw BudgetExceeded("exhaustive_select: K=" + std::to_string(k) + ", N=" + std::to_string(n) +
                             ", M=" + std::to_string(m) + " needs " + (cost == std::numeric_limits<std::uint64_t>::max() ? std::string("at least ") : std::string()) + std::to_string(cost) +
                             " evaluations, budget is " + std::to_string(budget));

    ExhaustiveResult best;
    bool found = false;
    IndexList combo = iota_list(m);
    do {
        IndexList order = combo;
        do {
            IndexList beams = iota_list(m);
            do {
                ++best.evaluated;
                RateReport<double> rep;
                try {
                    rep = dpc_sum_rate(h, order, beams, power, variant);
                } catch (const DegenerateSelection&) {
                    continue;
                }
                bool take = !found || rep.sum_rate > best.rate.sum_rate * (1.0 + 1e-12);
                if (found && !take && rep.sum_rate >= best.rate.sum_rate * (1.0 - 1e-12)) {
                    take = std::tie(order, beams) < std::tie(best.selection.users, best.selection.beams);
                }
                if (take) {
                    found = true;
                    best.selection.users = order;
                    best.selection.beams = beams;
                    best.rate = std::move(rep);
                }
            } while (next_combination(beams, n));
        } while (std::next_permutation(order.begin(), order.end()));
    } while (next_combination(combo, k));

    if (!found)
        throw SelectionInfeasible("exhaustive_select: every user/beam subset is degenerate");
    return best;
}

OracleReport verify_qr_det_identity(std::size_t trials, std::uint64_t seed, Index max_dim)
{
    OracleReport rep;
    rep.claim_id = "qr-det";
    rep.details.resize(trials);
    parallel_for(trials, [&](std::size_t t) {
        Stream rng(seed, t, lane_aux);
        const Index u = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(max_dim)));
        const Index b = u + static_cast<Index>(rng.below(static_cast<std::uint64_t>(max_dim - u + 1)));
        CMatrix<double> g(u, b);
        for (Index i = 0; i < u; ++i)
            for (Index j = 0; j < b; ++j) {
                const double re = rng.normal();
                const double im = rng.normal();
                g(i, j) = std::complex<double>(re, im) / std::sqrt(2.0);
            }
        auto& d = rep.details[t];
        d.trial = t;
        try {
            const double prod = qr_positive_diag(CMatrix<double>(g.adjoint())).diagonal().prod();
            const double root = std::sqrt(gram_determinant(g));
            d.violation = std::abs(prod - root) / root;
            d.passed = d.violation < 1e-9;
        } catch (const DegenerateSelection&) {
            d.excluded = true;
            d.note = "rank deficient draw";
        }
    });
    rep.tally();
    return rep;
}

OracleReport verify_beam_monotonicity(std::size_t trials, const ChannelConfig& channel, Index m, double power,
                                      std::uint64_t seed)
{
    OracleReport rep;
    rep.claim_id = "beam-monotonicity";
    rep.details.resize(trials);
    std::vector<int> det_ok(trials, 0);
    std::vector<int> rate_ok(trials, 0);
    parallel_for(trials, [&](std::size_t t) {
        const CMatrix<double> h = beamspace_of(channel, seed, t);
        Stream rng(seed, t, lane_aux);
        const IndexList users = random_subset(rng, h.rows(), m);
        const IndexList order = random_subset(rng, h.cols(), h.cols());

        auto& d = rep.details[t];
        d.trial = t;
        bool det_pass = true;
        bool rate_pass = true;
        double worst = 0;
        double prev_det = -1;
        double prev_rate = -1;
        bool prev_rate_valid = false;
        for (Index b = m; b <= h.cols(); ++b) {
            const IndexList beams(order.begin(), order.begin() + b);
            const CMatrix<double> sub = h(users, beams);
            const double det = gram_determinant(sub);
            if (prev_det >= 0 && det < prev_det * (1.0 - 1e-12)) {
                det_pass = false;
                worst = std::max(worst, (prev_det - det) / prev_det);
            }
            prev_det = det;
            try {
                const double s = dpc_sum_rate(h, users, beams, power).sum_rate;
                if (prev_rate_valid && s < prev_rate - 1e-6) {
                    rate_pass = false;
                    worst = std::max(worst, prev_rate - s);
                }
                prev_rate = s;
                prev_rate_valid = true;
            } catch (const DegenerateSelection&) {
                prev_rate_valid = false;
            }
        }
        d.passed = det_pass && rate_pass;
        d.violation = worst;
        det_ok[t] = det_pass;
        rate_ok[t] = rate_pass;
    });
    rep.tally();
    rep.metrics["det_passes"] = std::accumulate(det_ok.begin(), det_ok.end(), 0.0);
    rep.metrics["rate_passes"] = std::accumulate(rate_ok.begin(), rate_ok.end(), 0.0);
    rep.metrics["power"] = power;
    return rep;
}

OracleReport verify_user_monotonicity(std::size_t trials, const ChannelConfig& channel, Index m_max, double power,
                                      std::uint64_t seed)
{
    OracleReport rep;
    rep.claim_id = "user-monotonicity";
    rep.details.resize(trials);
    parallel_for(trials, [&](std::size_t t) {
        const CMatrix<double> h = beamspace_of(channel, seed, t);
        auto& d = rep.details[t];
        d.trial = t;
        IndexList users;
        try {
            users = select_users_full_channel(h, m_max);
        } catch (const SelectionInfeasible&) {
            d.excluded = true;
            d.note = "greedy user selection infeasible";
            return;
        }
        const IndexList beams = iota_list(h.cols());
        std::vector<double> rates;
        for (Index u = 1; u <= m_max; ++u) {
            const IndexList prefix(users.begin(), users.begin() + u);
            RateReport<double> r;
            try {
                r = dpc_sum_rate(h, prefix, beams, power);
            } catch (const DegenerateSelection&) {
                d.excluded = true;
                d.note = "rank deficient prefix";
                return;
            }
            if (!r.all_active()) {
                d.excluded = true;
                d.note = "allocation not fully active at U=" + std::to_string(u);
                return;
            }
            rates.push_back(r.sum_rate);
        }
        d.passed = true;
        for (std::size_t i = 1; i < rates.size(); ++i) {
            if (!(rates[i] > rates[i - 1])) {
                d.passed = false;
                d.violation = std::max(d.violation, rates[i - 1] - rates[i]);
            }
        }
    });
    rep.tally();
    rep.metrics["power"] = power;
    return rep;
}

OracleReport verify_shared_beam_probability(const ChannelConfig& channel, Index m, std::size_t trials,
                                            double threshold, std::uint64_t seed)
{
    OracleReport rep;
    rep.claim_id = "shared-beam";
    rep.details.resize(trials);
    std::vector<double> collisions(trials, 0.0);
    std::vector<double> selections(trials, 0.0);
    parallel_for(trials, [&](std::size_t t) {
        const CMatrix<double> h = beamspace_of(channel, seed, t);
        auto& d = rep.details[t];
        d.trial = t;
        IndexList users;
        try {
            users = select_users_full_channel(h, m);
        } catch (const SelectionInfeasible&) {
            d.excluded = true;
            d.note = "greedy user selection infeasible";
            return;
        }
        IndexList taken{strongest_beam(h, users[0])};
        for (std::size_t i = 1; i < users.size(); ++i) {
            const Index b = strongest_beam(h, users[i]);
            if (detail::contains(taken, b))
                collisions[t] += 1;
            else
                taken.push_back(b);
            selections[t] += 1;
        }
        const double freq = selections[t] > 0 ? collisions[t] / selections[t] : 0.0;
        d.violation = std::max(0.0, freq - threshold);
        d.passed = freq < threshold;
    });
    rep.tally();
    const double c = std::accumulate(collisions.begin(), collisions.end(), 0.0);
    const double s = std::accumulate(selections.begin(), selections.end(), 0.0);
    rep.metrics["collision_frequency"] = s > 0 ? c / s : 0.0;
    rep.metrics["threshold"] = threshold;
    rep.metrics["M"] = static_cast<double>(m);
    return rep;
}

double mean_cross_correlation(const CMatrix<double>& rows)
{
    const Index m = rows.rows();
    if (m < 2)
        return 0.0;
    double sum = 0;
    Index pairs = 0;
    for (Index i = 0; i < m; ++i) {
        for (Index j = i + 1; j < m; ++j) {
            const double ni = rows.row(i).norm();
            const double nj = rows.row(j).norm();
            if (ni > 0 && nj > 0)
                sum += std::abs(rows.row(i).dot(rows.row(j))) / (ni * nj);
            ++pairs;
        }
    }
    return sum / static_cast<double>(pairs);
}

OracleReport verify_asymptotic_orthogonality(const std::vector<Index>& n_list, const ChannelConfig& channel, Index m,
                                             std::size_t trials, std::uint64_t seed)
{
    OracleReport rep;
    rep.claim_id = "orthogonality";
    std::vector<double> means;
    for (Index n : n_list) {
        ChannelConfig ch = channel;
        ch.antennas = static_cast<int>(n);
        std::vector<double> xc(trials, 0.0);
        parallel_for(trials, [&](std::size_t t) {
            const CMatrix<double> h = beamspace_of(ch, seed, t);
            const SelectionResult sel = algorithm2(h, m, {std::nullopt, 3, false});
            xc[t] = mean_cross_correlation(h(sel.users, sel.beams));
        });
        means.push_back(std::accumulate(xc.begin(), xc.end(), 0.0) / static_cast<double>(trials));
        rep.metrics["mean_xcorr_N=" + std::to_string(n)] = means.back();
    }
    for (std::size_t i = 1; i < means.size(); ++i) {
        OracleInstance d;
        d.trial = i;
        d.passed = means[i] < means[i - 1];
        d.violation = std::max(0.0, means[i] - means[i - 1]);
        d.note = "N=" + std::to_string(n_list[i - 1]) + " -> N=" + std::to_string(n_list[i]);
        rep.details.push_back(d);
    }
    rep.tally();
    return rep;
}

OracleReport verify_k_equals_m(const ChannelConfig& channel, double power, std::size_t trials, std::uint64_t seed)
{
    OracleReport rep;
    rep.claim_id = "k-equals-m";
    rep.details.resize(trials);
    const Index m = channel.users;
    parallel_for(trials, [&](std::size_t t) {
        const CMatrix<double> h = beamspace_of(channel, seed, t);
        auto& d = rep.details[t];
        d.trial = t;
        try {
            const SelectionOptions opts{std::nullopt, 3, false};
            const SelectionResult s1 = algorithm1(h, m, opts);
            const SelectionResult s2 = algorithm2(h, m, opts);
            const double r1 = dpc_sum_rate(h, s1.users, s1.beams, power).sum_rate;
            const double r2 = dpc_sum_rate(h, s2.users, s2.beams, power).sum_rate;
            d.violation = std::max(0.0, r2 - r1);
            d.passed = r2 <= r1 + 1e-9;
        } catch (const Error& e) {
            d.excluded = true;
            d.note = e.what();
        }
    });
    rep.tally();
    rep.metrics["power"] = power;
    return rep;
}

OrthogonalInstance orthogonal_instance(Index users, Index n, std::uint64_t seed, std::uint64_t trial,
                                       DftScaling scaling)
{
    if (users < 1 || users > n)
        throw InvalidInput("orthogonal_instance: need 1 <= K <= N");
    Stream rng(seed, trial, lane_aux + 1);
    OrthogonalInstance out;
    out.grid_beams = random_subset(rng, n, users);
    ChannelMatrix<double> h;
    h.data.resize(users, n);
    for (Index k = 0; k < users; ++k) {
        const double modulus = rng.uniform(0.5, 1.5);
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double u = 2.0 * std::numbers::pi * static_cast<double>(out.grid_beams[static_cast<std::size_t>(k)]) /
                         static_cast<double>(n);
        h.data.row(k) = std::polar(modulus, phase) * steering_vector<double>(u, n).entries.transpose();
    }
    out.h = to_beamspace(h.data, dft_matrix<double>(n, scaling));
    return out;
}

OracleReport verify_orthogonal_optimality(std::size_t trials, Index users, Index n, double power,
                                          std::uint64_t seed, std::uint64_t budget)
{
    OracleReport rep;
    rep.claim_id = "orthogonal-optimality";
    rep.details.resize(trials);
    const bool with_oracle = exhaustive_cost(users, n, users) <= budget;
    parallel_for(trials, [&](std::size_t t) {
        const OrthogonalInstance inst = orthogonal_instance(users, n, seed, t);
        auto& d = rep.details[t];
        d.trial = t;
        d.passed = true;
        const double bound = upper_bound(inst.h, users, power);
        double reference = bound;
        if (with_oracle) {
            const double opt = exhaustive_select(inst.h, users, power, RateVariant::squared_gain, budget).rate.sum_rate;
            d.violation = std::max(d.violation, std::abs(opt - bound));
            if (std::abs(opt - bound) > 1e-9) {
                d.passed = false;
                d.note += "optimum differs from benchmark; ";
            }
            reference = opt;
        }
        IndexList want_beams = inst.grid_beams;
        std::sort(want_beams.begin(), want_beams.end());
        for (Algorithm a : {Algorithm::alg1, Algorithm::alg2, Algorithm::alg3}) {
            try {
                const SelectionResult s = select(a, inst.h, users, {std::nullopt, 3, false});
                IndexList got_users = s.users;
                IndexList got_beams = s.beams;
                std::sort(got_users.begin(), got_users.end());
                std::sort(got_beams.begin(), got_beams.end());
                const double r = dpc_sum_rate(inst.h, s.users, s.beams, power).sum_rate;
                d.violation = std::max(d.violation, std::abs(r - reference));
                if (got_users != iota_list(users) || got_beams != want_beams) {
                    d.passed = false;
                    d.note += to_string(a) + ": wrong selection; ";
                }
                if (std::abs(r - reference) > 1e-9) {
                    d.passed = false;
                    d.note += to_string(a) + ": rate off the optimum; ";
                }
            } catch (const Error& e) {
                d.passed = false;
                d.note += to_string(a) + ": " + e.what() + "; ";
            }
        }
    });
    rep.tally();
    rep.metrics["exhaustive_checked"] = with_oracle ? 1.0 : 0.0;
    rep.metrics["power"] = power;
    return rep;
}

OracleReport compare_with_oracle(const ChannelConfig& channel, Index m, double power, std::size_t trials,
                                 std::uint64_t seed, std::uint64_t budget, RateVariant variant)
{
    const std::uint64_t cost = exhaustive_cost(channel.users, channel.antennas, m);
    if (cost > budget)
        throw BudgetExceeded("oracle: K=" + std::to_string(channel.users) + ", N=" +
                             std::to_string(channel.antennas) + ", M=" + std::to_string(m) + " needs " +
                             std::to_string(cost) + " evaluations per trial, budget is " + std::to_string(budget));

    constexpr std::array algorithms{Algorithm::alg1, Algorithm::alg2, Algorithm::alg3};
    OracleReport rep;
    rep.claim_id = "oracle-dominance";
    rep.details.resize(trials);
    // [trial][alg]: rate / optimum, and whether rate <= bound + 1e-6.
    std::vector<std::array<double, 3>> ratio(trials);
    std::vector<std::array<int, 3>> below_bound(trials);
    std::vector<std::array<int, 3>> feasible(trials);
    parallel_for(trials, [&](std::size_t t) {
        const CMatrix<double> h = beamspace_of(channel, seed, t);
        auto& d = rep.details[t];
        d.trial = t;
        ExhaustiveResult opt;
        double bound = 0;
        try {
            opt = exhaustive_select(h, m, power, variant, budget);
            bound = upper_bound(h, m, power, variant);
        } catch (const SelectionInfeasible& e) {
            d.excluded = true;
            d.note = e.what();
            return;
        } catch (const DegenerateSelection& e) {
            d.excluded = true;
            d.note = e.what();
            return;
        }
        d.passed = true;
        for (std::size_t a = 0; a < algorithms.size(); ++a) {
            try {
                const SelectionResult s = select(algorithms[a], h, m, {std::nullopt, 3, false});
                const double r = dpc_sum_rate(h, s.users, s.beams, power, variant).sum_rate;
                feasible[t][a] = 1;
                ratio[t][a] = r / opt.rate.sum_rate;
                below_bound[t][a] = r <= bound + 1e-6;
                if (r > opt.rate.sum_rate + 1e-9) {
                    d.passed = false;
                    d.violation = std::max(d.violation, r - opt.rate.sum_rate);
                }
            } catch (const Error& e) {
                d.note += to_string(algorithms[a]) + ": " + e.what() + "; ";
            }
        }
    });
    rep.tally();
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
        double n = 0, below = 0, ratio_sum = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            if (!feasible[t][a])
                continue;
            n += 1;
            below += below_bound[t][a];
            ratio_sum += ratio[t][a];
        }
        const std::string name = to_string(algorithms[a]);
        rep.metrics[name + "_below_bound_fraction"] = n > 0 ? below / n : 0.0;
        rep.metrics[name + "_mean_ratio_to_optimum"] = n > 0 ? ratio_sum / n : 0.0;
        rep.metrics[name + "_feasible"] = n;
    }
    rep.metrics["power"] = power;
    return rep;
}

} // namespace beamselect
