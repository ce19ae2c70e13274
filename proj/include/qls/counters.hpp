// Copyright 2026 The qls authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace qls {

/// Oracle-call and gate accounting. Row-oracle reads (T_A), state
/// preparations (T_B) and gate applications are tallied in module-level
/// atomic counters; totals are exact under concurrent use, per-run deltas
/// are taken by snapshotting around a single solve.
struct ResourceCounters {
    std::uint64_t row_oracle_calls = 0; // T_A
    std::uint64_t state_prep_calls = 0; // T_B
    std::uint64_t gate_applications = 0;
};

ResourceCounters counters_snapshot();
void counters_reset();

/// Element-wise difference `after - before` of two snapshots.
ResourceCounters counters_delta(const ResourceCounters &before,
                                const ResourceCounters &after);

namespace detail {
void count_row_oracle(std::uint64_t n);
void count_state_prep(std::uint64_t n);
void count_gates(std::uint64_t n);
} // namespace detail

} // namespace qls
