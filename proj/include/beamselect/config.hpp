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

#ifndef BEAMSELECT_CONFIG_HPP
#define BEAMSELECT_CONFIG_HPP

#include "beamselect/experiments.hpp"
#include "beamselect/selection.hpp"

#include <functional>
#include <string>
#include <vector>

namespace beamselect {

// Everything a CLI invocation can configure.
struct RunConfig {
    ExperimentConfig experiment = desk_config();
    Algorithm algorithm = Algorithm::alg2; // used by "select"
};

// One configurable key. Files group keys under [system], [channel] and
// [experiment]; overrides use the bare key.
struct ConfigKey {
    std::string section;
    std::string name;
    std::string full_default; // simulation-scale default, empty when not applicable
    std::string help;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, const std::string&)> set;
};

const std::vector<ConfigKey>& config_keys();

// Parses "key = value" lines with optional [section] headers; '#' and ';'
// start comments. Unknown keys and malformed values throw InvalidConfig.
void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin = "config");
void apply_config_file(RunConfig& cfg, const std::string& path);
// "key=value" with a bare key.
void apply_override(RunConfig& cfg, const std::string& assignment);

// Every key with its current value, grouped by section; parses back to cfg.
std::string config_text(const RunConfig& cfg);

// Key table for --help: section, key, desk default, simulation default, help.
std::string config_help();

} // namespace beamselect

#endif // BEAMSELECT_CONFIG_HPP
