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

#include "ddbpp/exact.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ddbpp/bounds.h"
#include "ddbpp/dff.h"
#include "ddbpp/ffit.h"
#include "ddbpp/opp.h"

namespace ddbpp {
namespace {

class ExactSearch {
 public:
  ExactSearch(const Instance& inst, int b_max, const SearchBudget& budget)
      : inst_(inst),
        matrix_(BuildMatrix(inst)),
        b_max_(b_max),
        meter_(budget) {
    const int n = inst.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return inst.items[a].area() > inst.items[b].area();
    });
    same_as_prev_.assign(n, false);
    for (int pos = 1; pos < n; ++pos) {
      const Item& a = inst.items[order_[pos - 1]];
      const Item& b = inst.items[order_[pos]];
      same_as_prev_[pos] = a.width == b.width && a.height == b.height &&
                           a.due_date == b.due_date;
    }
    masks_.assign(b_max + 1, 0);
    bin_of_.assign(n, 0);
  }

  ExactResult Run() {
    ExactResult res;
    FfOptions ff;
    ff.pack_budget = SearchBudget::Unlimited();
    FfResult start = FirstFit(inst_, matrix_, ff);
    res.pack_calls += start.stats.pack_calls;
    if (start.solution.bins_used <= b_max_) {
      incumbent_ = start.solution.l_max;
      best_ = start.solution;
    }
    Dfs(0, std::numeric_limits<int64_t>::min());
    res.nodes = meter_.nodes();
    res.pack_calls += pack_calls_;
    if (best_) {
      res.best_ub = best_->l_max;
      res.solution = best_;
    }
    if (!meter_.exhausted()) {
      res.status = ExactStatus::kOptimal;
      res.best_lb = best_ ? best_->l_max : std::numeric_limits<int64_t>::max();
    } else {
      res.status = ExactStatus::kBound;
      res.best_lb = Lb1(inst_, matrix_);
      if (best_) res.best_lb = std::min(res.best_lb, best_->l_max);
    }
    return res;
  }

 private:
  bool Feasible(uint64_t mask) {
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second.has_value();
    std::vector<PackItem> items;
    for (int i = 0; i < inst_.size(); ++i) {
      if ((mask >> i) & 1) {
        const Item& t = inst_.items[i];
        items.push_back({t.id, t.width, t.height, i});
      }
    }
    ++pack_calls_;
    PackResult r = Pack(items, inst_.bin_width, inst_.bin_height, &matrix_,
                        SearchBudget::Unlimited());
    std::optional<std::vector<PackPlacement>> entry;
    if (r.feasible()) entry = std::move(r.placements);
    return memo_.emplace(mask, std::move(entry)).first->second.has_value();
  }

  void Dfs(int depth, int64_t current) {
    if (!meter_.Tick()) return;
    const int n = inst_.size();
    if (depth == n) {
      if (!incumbent_ || current < *incumbent_) Record(current);
      return;
    }
    const int i = order_[depth];
    const Item& it = inst_.items[i];
    const int first = same_as_prev_[depth] ? bin_of_[order_[depth - 1]] : 1;
    for (int k = first; k <= b_max_; ++k) {
      const int64_t late = Lateness(inst_, it, k);
      const int64_t next = std::max(current, late);
      if (incumbent_ && next >= *incumbent_) break;  // lateness grows with k
      const uint64_t mask = masks_[k] | (uint64_t{1} << i);
      if (!Feasible(mask)) continue;
      masks_[k] = mask;
      bin_of_[i] = k;
      Dfs(depth + 1, next);
      masks_[k] &= ~(uint64_t{1} << i);
      if (meter_.exhausted()) return;
    }
  }

  void Record(int64_t value) {
    std::vector<Placement> placements;
    for (int k = 1; k <= b_max_; ++k) {
      if (masks_[k] == 0) continue;
      for (const PackPlacement& p : *memo_.at(masks_[k])) {
        placements.push_back({p.id, k, p.x, p.y, p.rotated});
      }
    }
    best_ = MakeSolution(inst_, std::move(placements));
    incumbent_ = value;
  }

  const Instance& inst_;
  DffMatrix matrix_;
  int b_max_;
  BudgetMeter meter_;
  std::vector<int> order_;
  std::vector<bool> same_as_prev_;
  std::vector<uint64_t> masks_;
  std::vector<int> bin_of_;
  std::unordered_map<uint64_t, std::optional<std::vector<PackPlacement>>>
      memo_;
  std::optional<int64_t> incumbent_;
  std::optional<Solution> best_;
  int64_t pack_calls_ = 0;
};

}  // namespace

ExactResult SolveExact(const Instance& inst, std::optional<int> b_max,
                       const SearchBudget& budget) {
  if (inst.size() > 62) {
    throw std::invalid_argument("exact solver supports at most 62 items");
  }
  const int bins = b_max.value_or(inst.size());
  if (bins < 1) throw std::invalid_argument("b_max must be positive");
  ExactSearch search(inst, bins, budget);
  return search.Run();
}

}  // namespace ddbpp
