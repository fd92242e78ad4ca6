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

#ifndef BEAMSELECT_CHANNEL_HPP
#define BEAMSELECT_CHANNEL_HPP

#include "beamselect/rng.hpp"
#include "beamselect/types.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace beamselect {

// Scaling of the DFT beamformer. The 1/N scaling is not unitary: F F^H = I/N.
enum class DftScaling : std::uint8_t {
    inverse_n = 0,
    unitary = 1,
};

enum class GainModel {
    constant_modulus, // sqrt(power) * exp(j phi), phi ~ U[0, 2pi)
    rayleigh,         // sqrt(power) * CN(0, 1)
};

std::string to_string(DftScaling s);
DftScaling parse_dft_scaling(const std::string& s);
std::string to_string(GainModel g);
GainModel parse_gain_model(const std::string& s);

// Saleh-Valenzuela channel description. The first path of each user is the
// line-of-sight path; the remaining paths are NLoS.
struct ChannelConfig {
    int users = 40;
    int antennas = 256;
    int paths = 3;
    double los_power_db = 0.0;
    double nlos_power_db = -10.0;
    GainModel gain_model = GainModel::constant_modulus;
    DftScaling scaling = DftScaling::inverse_n;

    void validate() const;
    double path_power(int path) const;
};

template <typename Real>
struct SteeringVector {
    CVector<Real> entries;
    Real spatial_frequency;
};

template <typename Real>
struct PathSpec {
    std::complex<Real> gain;
    Real angle_of_departure; // radians in [-pi/2, pi/2]
    bool is_los;

    Real spatial_frequency() const { return std::numbers::pi_v<Real> * std::sin(angle_of_departure); }
};

// Rows are users.
template <typename Real>
struct ChannelMatrix {
    CMatrix<Real> data;
    std::vector<std::vector<PathSpec<Real>>> paths;

    Index users() const { return data.rows(); }
    Index antennas() const { return data.cols(); }
};

template <typename Real>
struct BeamspaceChannel {
    CMatrix<Real> data;
    DftScaling scaling = DftScaling::inverse_n;

    Index users() const { return data.rows(); }
    Index beams() const { return data.cols(); }
};

// Array response: entry n is exp(j n u).
template <typename Real>
SteeringVector<Real> steering_vector(Real u, Index n)
{
    if (n < 1)
        throw InvalidDimension("steering_vector: N must be at least 1");
    if (!std::isfinite(u))
        throw InvalidInput("steering_vector: spatial frequency must be finite");
    SteeringVector<Real> a{CVector<Real>(n), u};
    for (Index i = 0; i < n; ++i)
        a.entries(i) = std::polar(Real(1), static_cast<Real>(i) * u);
    return a;
}

// [F]_{a,b} = s exp(-j 2 pi a b / N) with s = 1/N or 1/sqrt(N).
template <typename Real>
CMatrix<Real> dft_matrix(Index n, DftScaling scaling = DftScaling::inverse_n)
{
    if (n < 1)
        throw InvalidDimension("dft_matrix: N must be at least 1");
    const Real scale = scaling == DftScaling::inverse_n
                           ? Real(1) / static_cast<Real>(n)
                           : Real(1) / std::sqrt(static_cast<Real>(n));
    CMatrix<Real> f(n, n);
    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) {
            // Reduce a*b mod N first so the phase argument stays small.
            const Real phase = -Real(2) * std::numbers::pi_v<Real> *
                               static_cast<Real>((a * b) % n) / static_cast<Real>(n);
            f(a, b) = std::polar(scale, phase);
        }
    }
    return f;
}

// Builds one user row from its paths: sum_l alpha_l a^T(u_l).
template <typename Real>
CRowVector<Real> channel_row(const std::vector<PathSpec<Real>>& paths, Index n)
{
    CRowVector<Real> row = CRowVector<Real>::Zero(n);
    for (const auto& p : paths)
        row += p.gain * steering_vector<Real>(p.spatial_frequency(), n).entries.transpose();
    return row;
}

// Draws the paths of one user from its own substream.
template <typename Real>
std::vector<PathSpec<Real>> draw_paths(const ChannelConfig& cfg, Stream& rng)
{
    std::vector<PathSpec<Real>> paths;
    paths.reserve(static_cast<std::size_t>(cfg.paths));
    for (int l = 0; l < cfg.paths; ++l) {
        const double theta = rng.uniform(-std::numbers::pi / 2, std::numbers::pi / 2);
        const double amplitude = std::sqrt(cfg.path_power(l));
        std::complex<double> gain;
        if (cfg.gain_model == GainModel::constant_modulus) {
            gain = std::polar(amplitude, rng.uniform(0.0, 2.0 * std::numbers::pi));
        } else {
            const double re = rng.normal();
            const double im = rng.normal();
            gain = amplitude * std::complex<double>(re, im) / std::sqrt(2.0);
        }
        paths.push_back({std::complex<Real>(gain), static_cast<Real>(theta), l == 0});
    }
    return paths;
}

// Each user k of trial t uses substream (seed, t, k), so the matrix does not
// depend on generation order.
template <typename Real>
ChannelMatrix<Real> generate_channel(const ChannelConfig& cfg, std::uint64_t seed,
                                     std::uint64_t trial = 0)
{
    cfg.validate();
    ChannelMatrix<Real> h;
    h.data.resize(cfg.users, cfg.antennas);
    h.paths.reserve(static_cast<std::size_t>(cfg.users));
    for (int k = 0; k < cfg.users; ++k) {
        Stream rng(seed, trial, static_cast<std::uint64_t>(k));
        h.paths.push_back(draw_paths<Real>(cfg, rng));
        h.data.row(k) = channel_row<Real>(h.paths.back(), cfg.antennas);
    }
    return h;
}

template <typename Derived>
CMatrix<typename Eigen::NumTraits<typename Derived::Scalar>::Real>
to_beamspace(const Eigen::MatrixBase<Derived>& h,
             const CMatrix<typename Eigen::NumTraits<typename Derived::Scalar>::Real>& f)
{
    if (h.cols() != f.rows())
        throw InvalidDimension("to_beamspace: channel has " + std::to_string(h.cols()) +
                               " antennas but the beamformer has " + std::to_string(f.rows()) +
                               " rows");
    return h * f;
}

template <typename Real>
BeamspaceChannel<Real> to_beamspace(const ChannelMatrix<Real>& h,
                                    DftScaling scaling = DftScaling::inverse_n)
{
    return {to_beamspace(h.data, dft_matrix<Real>(h.antennas(), scaling)), scaling};
}

} // namespace beamselect

#endif // BEAMSELECT_CHANNEL_HPP
