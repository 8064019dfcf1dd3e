// Copyright 2026 The ddbpp Authors
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

#ifndef DDBPP_EXACT_H_
#define DDBPP_EXACT_H_

#include <cstdint>
#include <optional>

#include "ddbpp/model.h"
#include "ddbpp/search_budget.h"

namespace ddbpp {

enum class ExactStatus { kOptimal, kBound };

struct ExactResult {
  ExactStatus status = ExactStatus::kBound;
  int64_t best_lb = 0;
  std::optional<int64_t> best_ub;
  std::optional<Solution> solution;
  int64_t nodes = 0;
  int64_t pack_calls = 0;
};

// Largest instance the exact solver accepts without an explicit override.
inline constexpr int kExactDefaultMaxItems = 8;

// Minimum L_max over all solutions using bins 1..b_max (b_max = n when
// absent). Depth-first bin assignment in non-increasing area order with
// memoized single-bin feasibility; bins whose lateness cannot beat the
// incumbent are skipped. Throws std::invalid_argument for n > 62.
ExactResult SolveExact(const Instance& inst, std::optional<int> b_max,
                       const SearchBudget& budget);

}  // namespace ddbpp

#endif  // DDBPP_EXACT_H_
