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

#include "qls/counters.hpp"

#include <atomic>

namespace qls {

namespace {
std::atomic<std::uint64_t> g_row_oracle{0};
std::atomic<std::uint64_t> g_state_prep{0};
std::atomic<std::uint64_t> g_gates{0};
} // namespace

ResourceCounters counters_snapshot() {
    return {g_row_oracle.load(), g_state_prep.load(), g_gates.load()};
}

void counters_reset() {
    g_row_oracle.store(0);
    g_state_prep.store(0);
    g_gates.store(0);
}

ResourceCounters counters_delta(const ResourceCounters &before,
                                const ResourceCounters &after) {
    return {after.row_oracle_calls - before.row_oracle_calls,
            after.state_prep_calls - before.state_prep_calls,
            after.gate_applications - before.gate_applications};
}

namespace detail {
void count_row_oracle(std::uint64_t n) { g_row_oracle.fetch_add(n); }
void count_state_prep(std::uint64_t n) { g_state_prep.fetch_add(n); }
void count_gates(std::uint64_t n) { g_gates.fetch_add(n); }
} // namespace detail

} // namespace qls
