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

#ifndef BEAMSELECT_RNG_HPP
#define BEAMSELECT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace beamselect {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Key of an independent substream: (master seed, trial, lane). The key is a
// pure function of the three counters, so trials can be generated in any
// order or on any thread and still produce identical draws.
constexpr std::uint64_t substream_key(std::uint64_t master, std::uint64_t trial,
                                      std::uint64_t lane) noexcept
{
    return mix64(mix64(mix64(master) ^ trial) ^ (lane * 0xD1B54A32D192ED03ULL));
}

// Random stream with platform-independent conversions. std::mt19937_64 output
// is fully specified by the standard; the std:: distributions are not, so the
// conversions to floating point are done here.
class Stream {
public:
    explicit Stream(std::uint64_t key) : engine_(key) {}

    Stream(std::uint64_t master, std::uint64_t trial, std::uint64_t lane)
        : engine_(substream_key(master, trial, lane))
    {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer on [0, n).
    std::uint64_t below(std::uint64_t n)
    {
        // Rejection keeps the result unbiased.
        const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
        std::uint64_t x = 0;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    // Standard normal via Box-Muller (one value per call).
    double normal()
    {
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace beamselect

#endif // BEAMSELECT_RNG_HPP
