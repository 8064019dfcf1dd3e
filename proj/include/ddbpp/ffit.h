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

#ifndef DDBPP_FFIT_H_
#define DDBPP_FFIT_H_

#include <cstdint>
#include <optional>

#include "ddbpp/dff.h"
#include "ddbpp/model.h"
#include "ddbpp/search_budget.h"

namespace ddbpp {

struct FfOptions {
  SearchBudget pack_budget = SearchBudget::Nodes(2000);
  // Consecutive failed membership tests after which a bin is closed.
  std::optional<int> sigma;
  // Track the largest side that still fits the current bin with a 1-high
  // strip probe and skip items at least that long.
  bool mu_strategy = false;
};

struct FfStats {
  int64_t pack_calls = 0;
  int64_t pack_nodes = 0;
  int64_t pack_unknown = 0;
  int64_t mu_skips = 0;
};

struct FfResult {
  Solution solution;
  FfStats stats;
};

// First fit over items in non-decreasing due-date order (ties by id). A bin
// is filled greedily while the bin-count bound stays at 1, trimmed from the
// back until it packs, then completed by testing every remaining item in
// order. Unknown pack answers count as failures.
FfResult FirstFit(const Instance& inst, const DffMatrix& matrix,
                  const FfOptions& opts);

}  // namespace ddbpp

#endif  // DDBPP_FFIT_H_
