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

#ifndef BEAMSELECT_SERIALIZE_HPP
#define BEAMSELECT_SERIALIZE_HPP

#include "beamselect/config.hpp"
#include "beamselect/experiments.hpp"
#include "beamselect/oracle.hpp"
#include "beamselect/selection.hpp"

#include <string>
#include <vector>

namespace beamselect {

// Output of the select subcommand.
struct SelectionDocument {
    std::string algorithm;
    std::uint64_t trial = 0;
    double snr_db = 0;
    double sum_rate = 0;
    SelectionResult result;
};

// JSON documents; every one embeds the full configuration. Infinite trace
// scores are written as the string "inf".
std::string to_json(const SelectionDocument& doc, const RunConfig& cfg);
std::string to_json(const OracleReport& rep, const RunConfig& cfg);
std::string rows_to_json(const std::vector<SweepRow>& rows, const RunConfig& cfg);

SelectionDocument selection_from_json(const std::string& text);
std::vector<SweepRow> rows_from_json(const std::string& text);

} // namespace beamselect

#endif // BEAMSELECT_SERIALIZE_HPP
