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

#ifndef DDBPP_BOUNDS_H_
#define DDBPP_BOUNDS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ddbpp/dff.h"
#include "ddbpp/model.h"
#include "ddbpp/search_budget.h"

namespace ddbpp {

enum class Feasibility { kFeasible, kInfeasible, kUnknown };

const char* ToString(Feasibility f);

// Lower bound on the number of bins needed for the items at `indices`
// (0-based positions in inst.items):
//   max(ceil(total area / bin area), max_c ceil(sum_i min-orientation alpha_ci)).
// Zero for an empty set.
int BinCountLb(const Instance& inst, const DffMatrix& matrix,
               std::span<const int> indices);

// Same bound over all items with the default matrix.
int BinCountLb(const Instance& inst);

// Running version of BinCountLb for a growing/shrinking item set.
class BinCountAccumulator {
 public:
  BinCountAccumulator(const Instance& inst, const DffMatrix& matrix);

  void Add(int index);
  void Remove(int index);
  int Lb() const;
  // Bound for the current set plus item `index`, without modifying the set.
  int LbWith(int index) const;
  // Bound for the current set plus an arbitrary w x h rectangle.
  int LbWithRect(int w, int h) const;

 private:
  int Combine(int64_t area, const std::vector<int64_t>& sums) const;

  const Instance* inst_;
  const DffMatrix* matrix_;
  int count_ = 0;
  int64_t area_ = 0;
  std::vector<int64_t> sums_;  // per row, scaled
};

// LB1: items sorted by due date; max over prefixes of P * BinCountLb(prefix)
// minus the due date closing the prefix.
int64_t Lb1(const Instance& inst, const DffMatrix& matrix);

// b(UB) = max_i floor((UB + d_i) / P): the largest bin index any solution
// with L_max <= UB can use.
int BinsForBound(const Instance& inst, int64_t ub);

// Whether every item can be given a bin in 1..num_bins and an orientation
// so that k*P - d_i <= max_lateness and every matrix row holds per bin.
Feasibility RelaxFeasible(const Instance& inst, const DffMatrix& matrix,
                          int num_bins, int64_t max_lateness,
                          BudgetMeter& meter);

struct RelaxResult {
  std::optional<int64_t> value;  // absent when infeasible for num_bins
  bool valid = false;            // optimality proven
  int64_t nodes = 0;
  int feasibility_checks = 0;
};

// LB3: optimum of the relaxation where the geometric constraints are replaced
// by the feasibility rows. Binary search over candidate lateness values
// {k*P - d_i}; each probe is an exact DFS. When the budget runs out, `value`
// is still a sound lower bound (the smallest candidate not yet refuted) but
// `valid` is false. `known_feasible` may carry the L_max of a solution using
// at most num_bins bins.
RelaxResult Lb3(const Instance& inst, const DffMatrix& matrix, int num_bins,
                const SearchBudget& budget,
                std::optional<int64_t> known_feasible = std::nullopt);

struct BoundsReport {
  int64_t lb1 = 0;
  std::optional<int64_t> lb3;
  bool lb3_valid = false;
  int64_t lb3_nodes = 0;
  int64_t lb1_millis = 0;
  int64_t lb3_millis = 0;
};

}  // namespace ddbpp

#endif  // DDBPP_BOUNDS_H_
