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

#include "ddbpp/bounds.h"

#include <algorithm>
#include <numeric>

namespace ddbpp {
namespace {

int64_t FloorDiv(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int64_t CeilDiv(int64_t a, int64_t b) { return -FloorDiv(-a, b); }

// Exact DFS for one RELAX probe.
class RelaxSearch {
 public:
  RelaxSearch(const Instance& inst, const DffMatrix& matrix, int num_bins,
              int64_t max_lateness, BudgetMeter& meter)
      : inst_(inst),
        matrix_(matrix),
        num_bins_(num_bins),
        m_(matrix.num_rows()),
        meter_(meter) {
    const int n = inst.size();
    deadline_.resize(n);
    for (int i = 0; i < n; ++i) {
      const int64_t k = FloorDiv(max_lateness + inst.items[i].due_date,
                                 inst.processing_time);
      deadline_[i] = static_cast<int>(std::min<int64_t>(num_bins, k));
    }
  }

  Feasibility Run() {
    const int n = inst_.size();
    for (int i = 0; i < n; ++i) {
      if (deadline_[i] < 1) return Feasibility::kInfeasible;
    }
    // Heaviest items first (largest transformed area in any row).
    std::vector<std::pair<Rational, int>> weight(n);
    for (int i = 0; i < n; ++i) {
      Rational best(0);
      for (const DffRow& row : matrix_.rows) {
        best = std::max(best, row.alpha_o[i]);
      }
      weight[i] = {best, i};
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      if (weight[a].first != weight[b].first) {
        return weight[a].first > weight[b].first;
      }
      const Item& ia = inst_.items[a];
      const Item& ib = inst_.items[b];
      if (ia.width != ib.width) return ia.width > ib.width;
      if (ia.height != ib.height) return ia.height > ib.height;
      return deadline_[a] < deadline_[b];
    });
    // Orientation preference: the one with the smaller heaviest row first.
    rotated_first_.assign(n, false);
    for (int i = 0; i < n; ++i) {
      if (!inst_.Rotatable(inst_.items[i])) continue;
      Rational worst_o(0), worst_r(0);
      for (const DffRow& row : matrix_.rows) {
        worst_o = std::max(worst_o, row.alpha_o[i]);
        worst_r = std::max(worst_r, *row.alpha_r[i]);
      }
      rotated_first_[i] = worst_r < worst_o;
    }
    same_as_prev_.assign(n, false);
    for (int pos = 1; pos < n; ++pos) {
      const Item& a = inst_.items[order_[pos - 1]];
      const Item& b = inst_.items[order_[pos]];
      same_as_prev_[pos] = a.width == b.width && a.height == b.height &&
                           deadline_[order_[pos - 1]] == deadline_[order_[pos]];
    }
    load_.assign(static_cast<size_t>(num_bins_) * m_, 0);
    bin_count_.assign(num_bins_ + 1, 0);
    remaining_by_deadline_.assign(num_bins_ + 2, 0);
    for (int i = 0; i < n; ++i) ++remaining_by_deadline_[deadline_[i]];
    assigned_bin_.assign(n, 0);
    assigned_rot_.assign(n, false);
    const bool found = Dfs(0);
    if (found) return Feasibility::kFeasible;
    return meter_.exhausted() ? Feasibility::kUnknown : Feasibility::kInfeasible;
  }

 private:
  int64_t& Load(int bin, int c) { return load_[(bin - 1) * m_ + c]; }

  bool Fits(int i, int bin, bool rotated) {
    for (int c = 0; c < m_; ++c) {
      const DffRow& row = matrix_.rows[c];
      const int64_t a = rotated ? row.scaled_r[i] : row.scaled_o[i];
      if (Load(bin, c) + a > row.scale) return false;
    }
    return true;
  }

  void Apply(int i, int bin, bool rotated, int sign) {
    for (int c = 0; c < m_; ++c) {
      const DffRow& row = matrix_.rows[c];
      Load(bin, c) += sign * (rotated ? row.scaled_r[i] : row.scaled_o[i]);
    }
    bin_count_[bin] += sign;
  }

  // Fractional check: items whose deadline is at most t must fit, per row,
  // into the residual capacity of bins 1..t.
  bool PrefixCapacityHolds(int depth) {
    const int n = inst_.size();
    std::vector<int64_t> need(static_cast<size_t>(num_bins_ + 1) * m_, 0);
    for (int pos = depth; pos < n; ++pos) {
      const int i = order_[pos];
      for (int c = 0; c < m_; ++c) {
        need[deadline_[i] * m_ + c] += matrix_.rows[c].ScaledMin(i);
      }
    }
    for (int c = 0; c < m_; ++c) {
      const int64_t cap = matrix_.rows[c].scale;
      int64_t demand = 0, residual = 0;
      for (int t = 1; t <= num_bins_; ++t) {
        demand += need[t * m_ + c];
        residual += cap - Load(t, c);
        if (demand > residual) return false;
      }
    }
    return true;
  }

  bool Dfs(int depth) {
    const int n = inst_.size();
    if (depth == n) return true;
    if (!meter_.Tick()) return false;
    if (m_ > 0 && !PrefixCapacityHolds(depth)) return false;
    const int i = order_[depth];
    const bool rotatable = inst_.Rotatable(inst_.items[i]) &&
                           inst_.items[i].width != inst_.items[i].height;
    --remaining_by_deadline_[deadline_[i]];
    // Identical consecutive items take (bin, rotated) in non-decreasing order.
    int first_bin = 1;
    int prev_bin = 0;
    bool prev_rot = false;
    if (same_as_prev_[depth]) {
      const int prev = order_[depth - 1];
      first_bin = prev_bin = assigned_bin_[prev];
      prev_rot = assigned_rot_[prev];
    }
    int last_empty = 0;
    bool found = false;
    for (int bin = first_bin; bin <= deadline_[i] && !found; ++bin) {
      if (bin_count_[bin] == 0) {
        if (last_empty != 0 && !DeadlineBetween(last_empty, bin)) continue;
        last_empty = bin;
      }
      for (int o = 0; o < (rotatable ? 2 : 1) && !found; ++o) {
        const bool rotated = rotatable && (o == 0) == rotated_first_[i];
        if (bin == prev_bin && prev_rot && !rotated) continue;
        if (!Fits(i, bin, rotated)) continue;
        Apply(i, bin, rotated, +1);
        assigned_bin_[i] = bin;
        assigned_rot_[i] = rotated;
        found = Dfs(depth + 1);
        Apply(i, bin, rotated, -1);
        if (meter_.exhausted()) break;
      }
      if (meter_.exhausted()) break;
    }
    ++remaining_by_deadline_[deadline_[i]];
    return found;
  }

  // Whether some still-unassigned item (including the current one, whose
  // count was removed) has a deadline in [lo, hi).
  bool DeadlineBetween(int lo, int hi) const {
    for (int t = lo; t < hi; ++t) {
      if (remaining_by_deadline_[t] > 0) return true;
    }
    return false;
  }

  const Instance& inst_;
  const DffMatrix& matrix_;
  int num_bins_;
  int m_;
  BudgetMeter& meter_;
  std::vector<int> deadline_;
  std::vector<int> order_;
  std::vector<bool> rotated_first_;
  std::vector<bool> same_as_prev_;
  std::vector<int64_t> load_;
  std::vector<int> bin_count_;
  std::vector<int> remaining_by_deadline_;
  std::vector<int> assigned_bin_;
  std::vector<bool> assigned_rot_;
};

// Rows-only prefix bound; every RELAX solution satisfies it.
int64_t RelaxLowerBound(const Instance& inst, const DffMatrix& matrix) {
  std::vector<int> order(inst.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return inst.items[a].due_date < inst.items[b].due_date;
  });
  std::vector<int64_t> sums(matrix.num_rows(), 0);
  int64_t best = 0;
  bool first = true;
  for (int i : order) {
    int64_t bins = 1;
    for (int c = 0; c < matrix.num_rows(); ++c) {
      sums[c] += matrix.rows[c].ScaledMin(i);
      bins = std::max(bins, CeilDiv(sums[c], matrix.rows[c].scale));
    }
    const int64_t v = bins * inst.processing_time - inst.items[i].due_date;
    if (first || v > best) best = v;
    first = false;
  }
  return best;
}

}  // namespace

const char* ToString(Feasibility f) {
  switch (f) {
    case Feasibility::kFeasible:
      return "feasible";
    case Feasibility::kInfeasible:
      return "infeasible";
    case Feasibility::kUnknown:
      return "unknown";
  }
  return "?";
}

BinCountAccumulator::BinCountAccumulator(const Instance& inst,
                                         const DffMatrix& matrix)
    : inst_(&inst), matrix_(&matrix), sums_(matrix.num_rows(), 0) {}

void BinCountAccumulator::Add(int index) {
  ++count_;
  area_ += inst_->items[index].area();
  for (int c = 0; c < matrix_->num_rows(); ++c) {
    sums_[c] += matrix_->rows[c].ScaledMin(index);
  }
}

void BinCountAccumulator::Remove(int index) {
  --count_;
  area_ -= inst_->items[index].area();
  for (int c = 0; c < matrix_->num_rows(); ++c) {
    sums_[c] -= matrix_->rows[c].ScaledMin(index);
  }
}

int BinCountAccumulator::Combine(int64_t area,
                                 const std::vector<int64_t>& sums) const {
  int64_t bins = CeilDiv(area, inst_->bin_area());
  for (int c = 0; c < matrix_->num_rows(); ++c) {
    bins = std::max(bins, CeilDiv(sums[c], matrix_->rows[c].scale));
  }
  return static_cast<int>(bins);
}

int BinCountAccumulator::Lb() const {
  if (count_ == 0) return 0;
  return Combine(area_, sums_);
}

int BinCountAccumulator::LbWith(int index) const {
  std::vector<int64_t> sums = sums_;
  for (int c = 0; c < matrix_->num_rows(); ++c) {
    sums[c] += matrix_->rows[c].ScaledMin(index);
  }
  return Combine(area_ + inst_->items[index].area(), sums);
}

int BinCountAccumulator::LbWithRect(int w, int h) const {
  std::vector<int64_t> sums = sums_;
  const bool rotatable = h <= inst_->bin_width && w <= inst_->bin_height;
  for (int c = 0; c < matrix_->num_rows(); ++c) {
    int64_t a = matrix_->ScaledAlpha(c, w, h);
    if (rotatable) a = std::min(a, matrix_->ScaledAlpha(c, h, w));
    sums[c] += a;
  }
  return Combine(area_ + static_cast<int64_t>(w) * h, sums);
}

int BinCountLb(const Instance& inst, const DffMatrix& matrix,
               std::span<const int> indices) {
  BinCountAccumulator acc(inst, matrix);
  for (int i : indices) acc.Add(i);
  return acc.Lb();
}

int BinCountLb(const Instance& inst) {
  const DffMatrix matrix = BuildMatrix(inst);
  std::vector<int> all(inst.size());
  std::iota(all.begin(), all.end(), 0);
  return BinCountLb(inst, matrix, all);
}

int64_t Lb1(const Instance& inst, const DffMatrix& matrix) {
  std::vector<int> order(inst.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return inst.items[a].due_date < inst.items[b].due_date;
  });
  BinCountAccumulator acc(inst, matrix);
  int64_t best = 0;
  bool first = true;
  for (int i : order) {
    acc.Add(i);
    const int64_t v = static_cast<int64_t>(acc.Lb()) * inst.processing_time -
                      inst.items[i].due_date;
    if (first || v > best) best = v;
    first = false;
  }
  return best;
}

int BinsForBound(const Instance& inst, int64_t ub) {
  int64_t best = 0;
  for (const Item& it : inst.items) {
    best = std::max(best, FloorDiv(ub + it.due_date, inst.processing_time));
  }
  return static_cast<int>(std::min<int64_t>(best, 1 << 20));
}

Feasibility RelaxFeasible(const Instance& inst, const DffMatrix& matrix,
                          int num_bins, int64_t max_lateness,
                          BudgetMeter& meter) {
  if (num_bins < 1) return Feasibility::kInfeasible;
  RelaxSearch search(inst, matrix, num_bins, max_lateness, meter);
  return search.Run();
}

RelaxResult Lb3(const Instance& inst, const DffMatrix& matrix, int num_bins,
                const SearchBudget& budget,
                std::optional<int64_t> known_feasible) {
  RelaxResult result;
  if (num_bins < 1) return result;
  std::vector<int64_t> cands;
  for (int k = 1; k <= num_bins; ++k) {
    for (const Item& it : inst.items) {
      cands.push_back(static_cast<int64_t>(k) * inst.processing_time -
                      it.due_date);
    }
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  const int64_t floor_value = RelaxLowerBound(inst, matrix);
  cands.erase(cands.begin(),
              std::lower_bound(cands.begin(), cands.end(), floor_value));
  bool hi_proven = false;
  if (known_feasible) {
    auto end = std::upper_bound(cands.begin(), cands.end(), *known_feasible);
    if (end != cands.begin()) {
      cands.erase(end, cands.end());
      hi_proven = true;
    }
  }
  if (cands.empty()) return result;

  BudgetMeter meter(budget);
  auto probe = [&](int64_t value) {
    ++result.feasibility_checks;
    return RelaxFeasible(inst, matrix, num_bins, value, meter);
  };
  size_t lo = 0;
  size_t hi = cands.size() - 1;
  if (!hi_proven) {
    const Feasibility top = probe(cands[hi]);
    if (top == Feasibility::kInfeasible) {
      // No assignment at all within num_bins bins.
      result.nodes = meter.nodes();
      return result;
    }
    hi_proven = top == Feasibility::kFeasible;
  }
  bool interrupted = !hi_proven;
  while (lo < hi && !interrupted) {
    const size_t mid = lo + (hi - lo) / 2;
    switch (probe(cands[mid])) {
      case Feasibility::kFeasible:
        hi = mid;
        break;
      case Feasibility::kInfeasible:
        lo = mid + 1;
        break;
      case Feasibility::kUnknown:
        interrupted = true;
        break;
    }
  }
  result.value = cands[lo];
  result.valid = !interrupted && lo == hi && hi_proven;
  result.nodes = meter.nodes();
  return result;
}

}  // namespace ddbpp
