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

#ifndef BEAMSELECT_CHANNEL_IO_HPP
#define BEAMSELECT_CHANNEL_IO_HPP

#include "beamselect/channel.hpp"

#include <iosfwd>
#include <string>

namespace beamselect {

// Binary channel dump:
//   bytes  0..3   magic "BSCH"
//   bytes  4..7   K, int32 little endian
//   bytes  8..11  N, int32 little endian
//   byte   12     DFT scaling (0 = 1/N, 1 = 1/sqrt(N))
//   bytes 13..23  reserved, zero
// followed by K*N complex entries, row-major, each as two little-endian
// IEEE-754 doubles (real, imaginary).
inline constexpr std::size_t channel_header_size = 24;

void write_channel(std::ostream& os, const BeamspaceChannel<double>& h);
BeamspaceChannel<double> read_channel(std::istream& is);

void save_channel(const std::string& path, const BeamspaceChannel<double>& h);
BeamspaceChannel<double> load_channel(const std::string& path);

} // namespace beamselect

#endif // BEAMSELECT_CHANNEL_IO_HPP
