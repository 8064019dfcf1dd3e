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

#ifndef DDBPP_HEUR_H_
#define DDBPP_HEUR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ddbpp/assign.h"
#include "ddbpp/dff.h"
#include "ddbpp/model.h"
#include "ddbpp/search_budget.h"

namespace ddbpp {

// Free regions of one bin given the occupied rectangles (bin field ignored).
// An empty bin yields the whole bin. Otherwise every obstacle contributes a
// region above it (ray cast up from its top-left corner, widened along its
// top edge) and one to its right (ray cast right from its bottom-right
// corner, widened along its right edge); each is then cut back until it is
// free. Empty regions are dropped, duplicates removed, and for a shared
// anchor only the largest region is kept. Sorted by (x, y, width, height).
std::vector<Region> GenerateRegions(int bin, int bin_w, int bin_h,
                                    std::span<const Region> obstacles);

// Whether some item at `unpacked` (0-based positions) fits r in a legal
// orientation and meets the bound there: k*P - d_i < ub for r's bin k.
bool RegionUseful(const Instance& inst, const Region& r,
                  std::span<const int> unpacked, int64_t ub);

struct HeurOptions {
  AssignMode mode = AssignMode::kFull;
  SearchBudget assign_budget = SearchBudget::Nodes(20000);
};

struct HeurStats {
  int iterations = 0;
  int64_t assign_nodes = 0;
  int assign_exhausted = 0;
  int blocked_regions = 0;   // regions turned into obstacles
  int blocked_skipped = 0;   // useless regions overlapping one just blocked
  bool no_progress = false;  // an iteration placed nothing
};

struct HeurResult {
  bool feasible = false;
  Solution solution;  // every item, L_max < ub, when feasible
  HeurStats stats;
};

// Builds a packing with L_max < ub using bins 1..num_bins by repeatedly
// solving the assignment model over the current free regions. `profit` is
// indexed by item position.
HeurResult Heur(const Instance& inst, const DffMatrix& matrix, int64_t ub,
                int num_bins, std::span<const double> profit,
                const HeurOptions& opts);

}  // namespace ddbpp

#endif  // DDBPP_HEUR_H_
