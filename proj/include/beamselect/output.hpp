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

#ifndef BEAMSELECT_OUTPUT_HPP
#define BEAMSELECT_OUTPUT_HPP

#include <string>

namespace beamselect {

// Writes to a temporary sibling file and renames it over path.
void write_file_atomic(const std::string& path, const std::string& contents);

} // namespace beamselect

#endif // BEAMSELECT_OUTPUT_HPP
