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

#ifndef DDBPP_OPP_H_
#define DDBPP_OPP_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ddbpp/bounds.h"
#include "ddbpp/dff.h"
#include "ddbpp/search_budget.h"

namespace ddbpp {

struct PackItem {
  int id = 0;
  int width = 0;
  int height = 0;
  // Position in the instance (column of the DFF rows), or -1 for a synthetic
  // rectangle whose transformed areas are computed on the fly.
  int column = -1;
};

struct PackPlacement {
  int id = 0;
  int x = 0;
  int y = 0;
  bool rotated = false;
};

// Three-valued answer of the single-bin feasibility search. Feasible and
// Infeasible are always correct; Unknown means the budget ran out.
struct PackResult {
  Feasibility status = Feasibility::kUnknown;
  std::vector<PackPlacement> placements;  // filled when feasible
  int64_t nodes = 0;

  bool feasible() const { return status == Feasibility::kFeasible; }
};

// Decides whether `items` fit into one bin_w x bin_h bin, each item either
// as given or turned by 90 degrees when the turned rectangle still fits.
// Items are placed depth-first in non-increasing area order at normal
// pattern coordinates (sums of other items' sides), lowest y then lowest x
// first. Every node is pruned by the residual area, by the matrix rows over
// the unplaced items, and by column/row profile relaxations that ignore
// space no unplaced item can reach. `matrix` may be null.
//
// Throws std::domain_error if an item does not fit the bin unrotated.
PackResult Pack(std::span<const PackItem> items, int bin_w, int bin_h,
                const DffMatrix* matrix, const SearchBudget& budget);

}  // namespace ddbpp

#endif  // DDBPP_OPP_H_
