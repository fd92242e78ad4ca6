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

#include "beamselect/channel_io.hpp"
#include "beamselect/output.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace beamselect {

namespace {

template <typename T>
void put_le(std::ostream& os, T value)
{
    std::array<unsigned char, sizeof(T)> bytes{};
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes.begin(), bytes.end());
    os.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& is)
{
    std::array<unsigned char, sizeof(T)> bytes{};
    if (!is.read(reinterpret_cast<char*>(bytes.data()), sizeof(T)))
        throw InvalidInput("channel file: truncated");
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes.begin(), bytes.end());
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

} // namespace

void write_channel(std::ostream& os, const BeamspaceChannel<double>& h)
{
    os.write("BSCH", 4);
    put_le(os, static_cast<std::int32_t>(h.users()));
    put_le(os, static_cast<std::int32_t>(h.beams()));
    put_le(os, static_cast<std::uint8_t>(h.scaling));
    for (std::size_t i = 13; i < channel_header_size; ++i)
        put_le(os, std::uint8_t{0});
    for (Index k = 0; k < h.users(); ++k) {
        for (Index n = 0; n < h.beams(); ++n) {
            put_le(os, h.data(k, n).real());
            put_le(os, h.data(k, n).imag());
        }
    }
}

BeamspaceChannel<double> read_channel(std::istream& is)
{
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "BSCH", 4) != 0)
        throw InvalidInput("channel file: bad magic (expected BSCH)");
    const auto k = get_le<std::int32_t>(is);
    const auto n = get_le<std::int32_t>(is);
    const auto scaling = get_le<std::uint8_t>(is);
    if (k < 1 || n < 1)
        throw InvalidInput("channel file: non-positive dimensions");
    if (scaling > 1)
        throw InvalidInput("channel file: unknown DFT scaling byte");
    for (std::size_t i = 13; i < channel_header_size; ++i)
        get_le<std::uint8_t>(is);

    BeamspaceChannel<double> h{CMatrix<double>(k, n), static_cast<DftScaling>(scaling)};
    for (Index r = 0; r < k; ++r) {
        for (Index c = 0; c < n; ++c) {
            const double re = get_le<double>(is);
            const double im = get_le<double>(is);
            h.data(r, c) = {re, im};
        }
    }
    return h;
}

void save_channel(const std::string& path, const BeamspaceChannel<double>& h)
{
    std::ostringstream os(std::ios::binary);
    write_channel(os, h);
    write_file_atomic(path, os.str());
}

BeamspaceChannel<double> load_channel(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw InvalidInput("cannot open channel file " + path);
    return read_channel(is);
}

} // namespace beamselect
