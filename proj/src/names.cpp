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

#include "beamselect/channel.hpp"
#include "beamselect/dpc_rate.hpp"
#include "beamselect/experiments.hpp"
#include "beamselect/selection.hpp"

namespace beamselect {

std::string to_string(DftScaling s)
{
    return s == DftScaling::inverse_n ? "inverse_n" : "unitary";
}

DftScaling parse_dft_scaling(const std::string& s)
{
    if (s == "inverse_n")
        return DftScaling::inverse_n;
    if (s == "unitary")
        return DftScaling::unitary;
    throw InvalidConfig("unknown DFT scaling '" + s + "' (expected inverse_n or unitary)");
}

std::string to_string(GainModel g)
{
    return g == GainModel::constant_modulus ? "constant_modulus" : "rayleigh";
}

GainModel parse_gain_model(const std::string& s)
{
    if (s == "constant_modulus")
        return GainModel::constant_modulus;
    if (s == "rayleigh")
        return GainModel::rayleigh;
    throw InvalidConfig("unknown gain model '" + s + "' (expected constant_modulus or rayleigh)");
}

std::string to_string(RateVariant v)
{
    return v == RateVariant::squared_gain ? "squared_gain" : "linear_gain";
}

RateVariant parse_rate_variant(const std::string& s)
{
    if (s == "squared_gain")
        return RateVariant::squared_gain;
    if (s == "linear_gain")
        return RateVariant::linear_gain;
    throw InvalidConfig("unknown rate variant '" + s + "' (expected squared_gain or linear_gain)");
}

std::string to_string(Algorithm a)
{
    switch (a) {
    case Algorithm::alg1: return "alg1";
    case Algorithm::alg2: return "alg2";
    case Algorithm::alg3: return "alg3";
    }
    return "unknown";
}

Algorithm parse_algorithm(const std::string& s)
{
    if (s == "alg1")
        return Algorithm::alg1;
    if (s == "alg2")
        return Algorithm::alg2;
    if (s == "alg3")
        return Algorithm::alg3;
    throw InvalidConfig("unknown algorithm '" + s + "' (expected alg1, alg2 or alg3)");
}

std::string to_string(Series s)
{
    switch (s) {
    case Series::alg1: return "alg1";
    case Series::alg2: return "alg2";
    case Series::alg3: return "alg3";
    case Series::upper_bound: return "upper_bound";
    case Series::oracle: return "oracle";
    }
    return "unknown";
}

Series parse_series(const std::string& s)
{
    if (s == "upper_bound")
        return Series::upper_bound;
    if (s == "oracle")
        return Series::oracle;
    if (s == "alg1")
        return Series::alg1;
    if (s == "alg2")
        return Series::alg2;
    if (s == "alg3")
        return Series::alg3;
    throw InvalidConfig("unknown algorithm '" + s + "' (expected alg1, alg2, alg3, upper_bound or oracle)");
}

void ChannelConfig::validate() const
{
    if (users < 1)
        throw InvalidConfig("channel: K must be at least 1");
    if (antennas < 1)
        throw InvalidConfig("channel: N must be at least 1");
    if (paths < 1)
        throw InvalidConfig("channel: the number of paths must be at least 1");
    if (!std::isfinite(los_power_db) || !std::isfinite(nlos_power_db))
        throw InvalidConfig("channel: path powers must be finite");
}

double ChannelConfig::path_power(int path) const
{
    return std::pow(10.0, (path == 0 ? los_power_db : nlos_power_db) / 10.0);
}

} // namespace beamselect
