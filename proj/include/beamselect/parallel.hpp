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

#ifndef BEAMSELECT_PARALLEL_HPP
#define BEAMSELECT_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace beamselect {

// Worker count: BEAMSELECT_THREADS if set (>= 1), otherwise the hardware
// concurrency.
unsigned worker_count();

// Calls body(i) for i in [0, n) on up to worker_count() threads. Each index
// is processed exactly once; callers write results into slot i so the outcome
// does not depend on scheduling. The exception of the lowest failing index is
// rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned workers = 0);

} // namespace beamselect

#endif // BEAMSELECT_PARALLEL_HPP
