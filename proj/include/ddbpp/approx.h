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

#ifndef DDBPP_APPROX_H_
#define DDBPP_APPROX_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddbpp/dff.h"
#include "ddbpp/ffit.h"
#include "ddbpp/model.h"
#include "ddbpp/search_budget.h"

namespace ddbpp {

struct ApproxOptions {
  FfOptions ff;
  SearchBudget assign_budget = SearchBudget::Nodes(20000);
  int a_lim_relaxed = 100;
  int a_lim_full = 100;
  // Minimal improvement step in percent of |UB|.
  std::optional<int> delta_percent;
  // Stop as soon as UB reaches the due-date prefix bound.
  bool stop_at_lower_bound = true;
  uint64_t seed = 1;
};

struct ApproxTraceRow {
  int iteration = 0;  // 0 is the first-fit start
  std::string mode;   // "ff", "relaxed" or "full"
  int64_t ub = 0;
  int bins = 0;       // b(UB)
  int attempts = 0;   // heuristic calls since the previous row
  int64_t nodes = 0;  // assignment nodes since the previous row
};

struct ApproxResult {
  Solution solution;
  int64_t ff_l_max = 0;
  FfStats ff_stats;
  std::vector<ApproxTraceRow> trace;
  int64_t heur_calls = 0;
  int64_t relaxed_calls = 0;
  int64_t full_calls = 0;
  int64_t assign_nodes = 0;
  bool reached_lower_bound = false;
};

// First fit, then repeated region-assignment heuristics (relaxed, then full)
// with random profit perturbation; each success lowers UB.
ApproxResult Approx(const Instance& inst, const DffMatrix& matrix,
                    const ApproxOptions& opts);

std::string ApproxTraceCsv(const std::vector<ApproxTraceRow>& trace);

}  // namespace ddbpp

#endif  // DDBPP_APPROX_H_
