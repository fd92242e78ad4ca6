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

#ifndef BEAMSELECT_SELECTION_HPP
#define BEAMSELECT_SELECTION_HPP

#include "beamselect/dpc_rate.hpp"
#include "beamselect/projection.hpp"
#include "beamselect/types.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace beamselect {

enum class Algorithm {
    alg1, // sequential: users on the full channel, then beams
    alg2, // simultaneous, null-space projection score
    alg3, // simultaneous, SIR score
};

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& s);

struct CandidateScore {
    Index user = -1;
    Index beam = -1;
    int offset = 0;
    double score = 0;      // +inf for zero-interference SIR candidates
    bool skipped = false;  // beam already taken or degenerate
};

struct TraceEntry {
    std::string stage;
    std::vector<CandidateScore> candidates;
    Index chosen_user = -1;
    Index chosen_beam = -1;
    double metric = 0;
};

struct SelectionResult {
    IndexList users; // selection order
    IndexList beams; // selection order
    std::vector<TraceEntry> trace;
};

struct SelectionOptions {
    std::optional<Index> mbar_override;
    int offset_count = 3;     // beam offsets probed in case 2: {0}, {0,+1}, {0,+1,-1}
    bool record_trace = true;
};

// floor(K N / (K + N)): number of users up to which strongest-beam collisions
// are negligible.
constexpr std::int64_t m_bar(std::int64_t users, std::int64_t beams)
{
    if (users < 1 || beams < 1)
        throw InvalidInput("m_bar: K and N must be positive");
    return users * beams / (users + beams);
}

// Lowest index among the maxima of |h(u, b)|^2.
template <typename Real>
Index strongest_beam(const CMatrix<Real>& h, Index user)
{
    if (user < 0 || user >= h.rows())
        throw InvalidInput("strongest_beam: user index out of range");
    Index best = 0;
    Real best_power = std::norm(h(user, 0));
    for (Index b = 1; b < h.cols(); ++b) {
        const Real p = std::norm(h(user, b));
        if (p > best_power) {
            best_power = p;
            best = b;
        }
    }
    return best;
}

struct NeighborBeamSet {
    IndexList beams;
    Index added_beam = -1;
    bool duplicate = false; // the shifted beam is already in the set
};

// selected U {(b + offset) mod N}.
inline NeighborBeamSet neighbor_beam_set(const IndexList& selected, Index beam, int offset, Index n)
{
    if (n < 1 || beam < 0 || beam >= n)
        throw InvalidInput("neighbor_beam_set: beam index out of range");
    NeighborBeamSet out{selected, ((beam + offset) % n + n) % n, false};
    out.duplicate = std::find(selected.begin(), selected.end(), out.added_beam) != selected.end();
    if (!out.duplicate)
        out.beams.push_back(out.added_beam);
    return out;
}

// Beam offsets probed per candidate user when strongest beams may collide.
inline std::vector<int> probe_offsets(int count)
{
    static constexpr std::array<int, 3> all{0, +1, -1};
    if (count < 1 || count > 3)
        throw InvalidInput("probe_offsets: offset count must be 1, 2 or 3");
    return {all.begin(), all.begin() + count};
}

namespace detail {

// Ordering of candidate scores. SIR scores may be infinite (no interference);
// those rank above every finite score and among themselves by signal power.
struct Score {
    double value = 0;
    double numerator = 0;
    bool infinite = false;

    double metric() const { return infinite ? std::numeric_limits<double>::infinity() : value; }
};

inline bool better(const Score& a, const Score& b)
{
    if (a.infinite != b.infinite)
        return a.infinite;
    if (a.infinite)
        return a.numerator > b.numerator;
    return a.value > b.value;
}

inline bool contains(const IndexList& v, Index x)
{
    return std::find(v.begin(), v.end(), x) != v.end();
}

// Squared tolerance on a projected power relative to the candidate's power.
template <typename Real>
bool degenerate_power(Real projected, Real reference)
{
    const Real tol = Tolerances<Real>::rank;
    return !(projected > tol * tol * reference);
}

template <typename Real>
Index argmax_first(const RVector<Real>& v)
{
    Index best = 0;
    for (Index i = 1; i < v.size(); ++i)
        if (v(i) > v(best))
            best = i;
    return best;
}

inline void check_request(Index k, Index n, Index m)
{
    if (m < 1 || m > std::min(k, n))
        throw InvalidInput("selection: M = " + std::to_string(m) + " must lie in [1, min(K, N)] = [1, " +
                           std::to_string(std::min(k, n)) + "]");
}

} // namespace detail

// Stage 1 of the sequential algorithm: greedy user selection on the full
// N-dimensional beamspace. The first user has the largest row power; each
// further user maximizes its power after projection onto the null space of
// the rows already selected.
template <typename Real>
IndexList select_users_full_channel(const CMatrix<Real>& h, Index m,
                                    std::vector<TraceEntry>* trace = nullptr)
{
    detail::check_request(h.rows(), h.cols(), m);
    const RVector<Real> row_power = h.rowwise().squaredNorm();
    IndexList users{detail::argmax_first(row_power)};
    if (!(row_power(users[0]) > Real(0)))
        throw SelectionInfeasible("algorithm 1: every user has a zero channel");
    if (trace) {
        TraceEntry e{"user-init", {}, users[0], -1, static_cast<double>(row_power(users[0]))};
        for (Index u = 0; u < h.rows(); ++u)
            e.candidates.push_back({u, -1, 0, static_cast<double>(row_power(u)), false});
        trace->push_back(std::move(e));
    }

    while (static_cast<Index>(users.size()) < m) {
        const ProjectorContext<Real> ctx(h(users, Eigen::all));
        TraceEntry e{"user", {}, -1, -1, 0};
        Index best = -1;
        Real best_score = 0;
        for (Index u = 0; u < h.rows(); ++u) {
            if (detail::contains(users, u))
                continue;
            const Real p = ctx.projected_power(h.row(u));
            const bool skip = detail::degenerate_power(p, row_power(u));
            if (trace)
                e.candidates.push_back({u, -1, 0, static_cast<double>(p), skip});
            if (!skip && (best < 0 || p > best_score)) {
                best = u;
                best_score = p;
            }
        }
        if (best < 0)
            throw SelectionInfeasible("algorithm 1: no user with a non-degenerate projection at iteration " +
                                      std::to_string(users.size()));
        users.push_back(best);
        if (trace) {
            e.chosen_user = best;
            e.metric = static_cast<double>(best_score);
            trace->push_back(std::move(e));
        }
    }
    return users;
}

// Stage 2 of the sequential algorithm: greedy beam selection for fixed users
// using the M-dimensional column projector.
template <typename Real>
IndexList select_beams_for_users(const CMatrix<Real>& h, const IndexList& users,
                                 std::vector<TraceEntry>* trace = nullptr)
{
    const Index m = static_cast<Index>(users.size());
    const CMatrix<Real> hs = h(users, Eigen::all);
    const RVector<Real> col_power = hs.colwise().squaredNorm().transpose();
    IndexList beams{detail::argmax_first(col_power)};
    if (trace) {
        TraceEntry e{"beam-init", {}, -1, beams[0], static_cast<double>(col_power(beams[0]))};
        for (Index b = 0; b < hs.cols(); ++b)
            e.candidates.push_back({-1, b, 0, static_cast<double>(col_power(b)), false});
        trace->push_back(std::move(e));
    }

    while (static_cast<Index>(beams.size()) < m) {
        const ProjectorContext<Real> ctx(hs(Eigen::all, beams).adjoint());
        TraceEntry e{"beam", {}, -1, -1, 0};
        Index best = -1;
        Real best_score = 0;
        for (Index b = 0; b < hs.cols(); ++b) {
            if (detail::contains(beams, b))
                continue;
            const Real p = ctx.projected_power(hs.col(b).adjoint());
            const bool skip = detail::degenerate_power(p, col_power(b));
            if (trace)
                e.candidates.push_back({-1, b, 0, static_cast<double>(p), skip});
            if (!skip && (best < 0 || p > best_score)) {
                best = b;
                best_score = p;
            }
        }
        if (best < 0)
            throw SelectionInfeasible("algorithm 1: no beam with a non-degenerate projection at iteration " +
                                      std::to_string(beams.size()));
        beams.push_back(best);
        if (trace) {
            e.chosen_beam = best;
            e.metric = static_cast<double>(best_score);
            trace->push_back(std::move(e));
        }
    }
    return beams;
}

// Sequential user and beam selection.
template <typename Real>
SelectionResult algorithm1(const CMatrix<Real>& h, Index m, const SelectionOptions& opts = {})
{
    SelectionResult out;
    auto* trace = opts.record_trace ? &out.trace : nullptr;
    out.users = select_users_full_channel(h, m, trace);
    out.beams = select_beams_for_users(h, out.users, trace);
    return out;
}

// SIR of a candidate partial channel x against the selected users' partial
// channels (rows of interferers): ||x||^2 / ||x interferers^H||^2.
template <typename Real, typename DerivedX, typename DerivedH>
detail::Score sir_score(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedH>& interferers)
{
    detail::Score s;
    const Real signal = x.squaredNorm();
    const Real interference = (interferers * x.adjoint()).squaredNorm();
    s.numerator = static_cast<double>(signal);
    if (interference < Real(1e-12) * signal)
        s.infinite = true;
    else
        s.value = static_cast<double>(signal / interference);
    return s;
}

namespace detail {

// Shared control flow of the simultaneous algorithms. The score policy is the
// null-space projection power (algorithm 2) or the SIR (algorithm 3).
template <typename Real>
SelectionResult simultaneous_selection(const CMatrix<Real>& h, Index m, const SelectionOptions& opts,
                                       bool use_sir)
{
    const Index k = h.rows();
    const Index n = h.cols();
    check_request(k, n, m);
    const std::vector<int> case2_offsets = probe_offsets(opts.offset_count);
    const Index mbar = opts.mbar_override ? *opts.mbar_override : static_cast<Index>(m_bar(k, n));
    const Index case1_end = std::max<Index>(1, std::min(m, mbar));

    const Eigen::Array<Real, Eigen::Dynamic, Eigen::Dynamic> power = h.cwiseAbs2();
    IndexList strongest(static_cast<std::size_t>(k));
    for (Index u = 0; u < k; ++u)
        strongest[static_cast<std::size_t>(u)] = strongest_beam(h, u);

    SelectionResult out;
    {
        Index bu = 0;
        for (Index u = 1; u < k; ++u)
            if (power(u, strongest[u]) > power(bu, strongest[bu]))
                bu = u;
        if (!(power(bu, strongest[bu]) > Real(0)))
            throw SelectionInfeasible("simultaneous selection: the channel is identically zero");
        out.users.push_back(bu);
        out.beams.push_back(strongest[bu]);
        if (opts.record_trace)
            out.trace.push_back({"init", {}, bu, strongest[bu], static_cast<double>(power(bu, strongest[bu]))});
    }

    while (static_cast<Index>(out.users.size()) < m) {
        const Index sel = static_cast<Index>(out.users.size());
        const CMatrix<Real> base = h(out.users, out.beams);
        const CMatrix<Real> g0 = base * base.adjoint();
        // One factorization per iteration; candidates differ from G0 by a
        // rank-one term. An ill-conditioned G0 falls back to factoring each
        // candidate's Gram matrix.
        bool g0_ok = false;
        Eigen::LLT<CMatrix<Real>> g0_llt;
        if (!use_sir) {
            g0_llt.compute(g0);
            if (g0_llt.info() == Eigen::Success) {
                const auto d = g0_llt.matrixLLT().diagonal().real();
                g0_ok = d.minCoeff() > Tolerances<Real>::rank * d.maxCoeff();
            }
        }

        auto run_round = [&](const std::vector<int>& offsets, const char* stage) {
            TraceEntry e{stage, {}, -1, -1, 0};
            Score best_score;
            Index best_user = -1;
            Index best_beam = -1;
            CMatrix<Real> check(sel, sel + 1);
            check.leftCols(sel) = base;
            CRowVector<Real> x(sel + 1);
            for (Index u = 0; u < k; ++u) {
                if (contains(out.users, u))
                    continue;
                for (int offset : offsets) {
                    const Index b = ((strongest[u] + offset) % n + n) % n;
                    CandidateScore rec{u, b, offset, 0, false};
                    if (contains(out.beams, b)) {
                        rec.skipped = true;
                        if (opts.record_trace)
                            e.candidates.push_back(rec);
                        continue;
                    }
                    check.col(sel) = h(out.users, b);
                    x.head(sel) = h(u, out.beams);
                    x(sel) = h(u, b);
                    Score s;
                    if (use_sir) {
                        if (!(x.squaredNorm() > Real(0))) {
                            rec.skipped = true;
                        } else {
                            s = sir_score<Real>(x, check);
                        }
                    } else if (g0_ok) {
                        // G = G0 + v v^H; x^H-side quadratic form by Sherman-Morrison.
                        const CVector<Real> v = check.col(sel);
                        const CVector<Real> c = base * x.head(sel).adjoint() + v * std::conj(x(sel));
                        const CVector<Real> w = g0_llt.solve(c);
                        const CVector<Real> z = g0_llt.solve(v);
                        const Real denom = Real(1) + v.dot(z).real();
                        const Real q = c.dot(w).real() - std::norm(z.dot(c)) / denom;
                        const Real p = std::max(Real(0), Real(x.squaredNorm()) - q);
                        rec.skipped = degenerate_power(p, Real(x.squaredNorm()));
                        s.value = static_cast<double>(p);
                    } else {
                        try {
                            const CVector<Real> v = check.col(sel);
                            const ProjectorContext<Real> ctx(check, g0 + v * v.adjoint());
                            const Real p = ctx.projected_power(x);
                            rec.skipped = degenerate_power(p, Real(x.squaredNorm()));
                            s.value = static_cast<double>(p);
                        } catch (const DegenerateSelection&) {
                            rec.skipped = true;
                        }
                    }
                    rec.score = s.metric();
                    if (opts.record_trace)
                        e.candidates.push_back(rec);
                    if (!rec.skipped && (best_user < 0 || better(s, best_score))) {
                        best_score = s;
                        best_user = u;
                        best_beam = b;
                    }
                }
            }
            e.chosen_user = best_user;
            e.chosen_beam = best_beam;
            e.metric = best_score.metric();
            return e;
        };

        const bool case1 = sel < case1_end;
        TraceEntry e = run_round(case1 ? std::vector<int>{0} : case2_offsets, case1 ? "case1" : "case2");
        if (e.chosen_user < 0 && case1) {
            // Every remaining user's strongest beam is taken; probe neighbours.
            e = run_round(case2_offsets, "case1-fallback");
        }
        if (e.chosen_user < 0)
            throw SelectionInfeasible(std::string(use_sir ? "algorithm 3" : "algorithm 2") +
                                      ": every candidate skipped at iteration " + std::to_string(sel));
        out.users.push_back(e.chosen_user);
        out.beams.push_back(e.chosen_beam);
        if (opts.record_trace)
            out.trace.push_back(std::move(e));
    }
    return out;
}

} // namespace detail

// Simultaneous user and beam selection with null-space projection scores.
template <typename Real>
SelectionResult algorithm2(const CMatrix<Real>& h, Index m, const SelectionOptions& opts = {})
{
    return detail::simultaneous_selection(h, m, opts, false);
}

// Simultaneous user and beam selection with SIR scores.
template <typename Real>
SelectionResult algorithm3(const CMatrix<Real>& h, Index m, const SelectionOptions& opts = {})
{
    return detail::simultaneous_selection(h, m, opts, true);
}

template <typename Real>
SelectionResult select(Algorithm a, const CMatrix<Real>& h, Index m, const SelectionOptions& opts = {})
{
    switch (a) {
    case Algorithm::alg1: return algorithm1(h, m, opts);
    case Algorithm::alg2: return algorithm2(h, m, opts);
    case Algorithm::alg3: return algorithm3(h, m, opts);
    }
    throw InvalidInput("select: unknown algorithm");
}

// Rate benchmark: users of the sequential algorithm's first stage served on
// all N beams.
template <typename Real>
RateReport<Real> upper_bound_report(const CMatrix<Real>& h, Index m, Real power,
                                    RateVariant variant = RateVariant::squared_gain)
{
    const IndexList users = select_users_full_channel(h, m);
    IndexList beams(static_cast<std::size_t>(h.cols()));
    std::iota(beams.begin(), beams.end(), Index{0});
    return dpc_sum_rate(h, users, beams, power, variant);
}

template <typename Real>
Real upper_bound(const CMatrix<Real>& h, Index m, Real power,
                 RateVariant variant = RateVariant::squared_gain)
{
    return upper_bound_report(h, m, power, variant).sum_rate;
}

} // namespace beamselect

#endif // BEAMSELECT_SELECTION_HPP
