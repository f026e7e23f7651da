// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PCGPLAN_PARALLEL_H_
#define PCGPLAN_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace pcgplan {

// Environment variable consulted when no explicit thread count is set.
inline constexpr const char* kThreadsEnvVar = "PCGPLAN_THREADS";

// Process-wide worker count. 0 restores the default (env var, then hardware).
void set_worker_threads(int threads);
int worker_threads();

// Runs fn(i) for i in [0, n). Each index runs exactly once; callers write
// results into per-index slots so output never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace pcgplan

#endif  // PCGPLAN_PARALLEL_H_
