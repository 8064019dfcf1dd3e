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

#ifndef DDBPP_ASSIGN_H_
#define DDBPP_ASSIGN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ddbpp/dff.h"
#include "ddbpp/model.h"
#include "ddbpp/search_budget.h"

namespace ddbpp {

// Free rectangle inside bin `bin` with bottom-left anchor (x, y).
struct Region {
  int bin = 1;
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  int64_t area() const { return static_cast<int64_t>(width) * height; }
  friend bool operator==(const Region&, const Region&) = default;
};

// Same bin and positive-area intersection.
bool RegionsOverlap(const Region& a, const Region& b);

// Relative position of two overlapping regions, e first:
//   I:   x_e <  x_e' and y_e >  y_e'
//   II:  x_e <  x_e' and y_e <  y_e'
//   III: x_e == x_e' and y_e >  y_e'
//   IV:  x_e <  x_e' and y_e == y_e'
// kNone for non-overlapping pairs, for the reverse orderings and for equal
// anchors.
enum class OverlapPattern { kNone, kI, kII, kIII, kIV };

OverlapPattern ClassifyPair(const Region& e, const Region& f);
const char* ToString(OverlapPattern p);

enum class AssignMode {
  kFull,     // every item placed now or reserved in a later bin; rows apply
  kRelaxed,  // items may stay unassigned; no rows, no reservations
};

struct AssignInput {
  const Instance* inst = nullptr;
  const DffMatrix* matrix = nullptr;
  int64_t ub = 0;    // placements and reservations need k*P - d_i < ub
  int num_bins = 0;  // bins 1..num_bins
  std::vector<int> unpacked;    // item indices (0-based)
  std::vector<double> profit;   // per item index, size n
  std::vector<Region> regions;  // bins within 1..num_bins
  // Scaled row load of everything already in bin k (items and blocked
  // regions): committed_load[k - 1][c]. Empty means zero.
  std::vector<std::vector<int64_t>> committed_load;
  AssignMode mode = AssignMode::kFull;
};

struct AssignPair {
  int first = 0;  // region indices; the pattern is for (first, second)
  int second = 0;
  OverlapPattern pattern = OverlapPattern::kNone;  // kNone: equal anchors
};

struct AssignModel {
  AssignMode mode = AssignMode::kFull;
  const Instance* inst = nullptr;
  const DffMatrix* matrix = nullptr;
  int num_bins = 0;
  std::vector<int> items;       // item indices
  std::vector<double> profit;   // per model item
  std::vector<Region> regions;
  std::vector<std::vector<int>> cand_o;  // per model item: region indices
  std::vector<std::vector<int>> cand_r;
  std::vector<std::vector<int>> resv_o;  // per model item: bins (full mode)
  std::vector<std::vector<int>> resv_r;
  std::vector<AssignPair> pairs;         // overlapping region pairs
  std::vector<std::vector<int64_t>> rhs;  // [bin - 1][row], full mode
  bool trivially_infeasible = false;      // an item has no option at all

  // Constraint listing, one line per constraint, for inspection and golden
  // tests.
  std::string Dump() const;
};

AssignModel BuildAssignModel(const AssignInput& input);

enum class AssignStatus { kOptimal, kIncumbent, kInfeasible };
const char* ToString(AssignStatus s);

struct AssignPlacement {
  int item = 0;  // item index
  int region = 0;
  bool rotated = false;
};

struct AssignReservation {
  int item = 0;
  int bin = 0;
  bool rotated = false;
};

struct AssignResult {
  AssignStatus status = AssignStatus::kInfeasible;
  std::vector<AssignPlacement> placements;
  std::vector<AssignReservation> reservations;
  double objective = 0.0;
  bool exhausted = false;
  int64_t nodes = 0;
};

// Branch and bound. Items are branched in non-increasing order of profit over
// their smallest candidate region; regions are tried before reservations (or
// before leaving the item out), best unit profit first, then by (bin, x, y).
// The bound adds to the current objective every remaining item's best unit
// profit among free regions. On equal objectives the first leaf found wins.
AssignResult SolveAssign(const AssignModel& model, const SearchBudget& budget);

}  // namespace ddbpp

#endif  // DDBPP_ASSIGN_H_
