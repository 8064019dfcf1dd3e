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

#include "ddbpp/assign.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ddbpp {

bool RegionsOverlap(const Region& a, const Region& b) {
  if (a.bin != b.bin) return false;
  if (a.width <= 0 || a.height <= 0 || b.width <= 0 || b.height <= 0) {
    return false;
  }
  return a.x < b.x + b.width && b.x < a.x + a.width && a.y < b.y + b.height &&
         b.y < a.y + a.height;
}

OverlapPattern ClassifyPair(const Region& e, const Region& f) {
  if (!RegionsOverlap(e, f)) return OverlapPattern::kNone;
  if (e.x < f.x && e.y > f.y) return OverlapPattern::kI;
  if (e.x < f.x && e.y < f.y) return OverlapPattern::kII;
  if (e.x == f.x && e.y > f.y) return OverlapPattern::kIII;
  if (e.x < f.x && e.y == f.y) return OverlapPattern::kIV;
  return OverlapPattern::kNone;
}

const char* ToString(OverlapPattern p) {
  switch (p) {
    case OverlapPattern::kNone: return "none";
    case OverlapPattern::kI: return "I";
    case OverlapPattern::kII: return "II";
    case OverlapPattern::kIII: return "III";
    case OverlapPattern::kIV: return "IV";
  }
  return "?";
}

const char* ToString(AssignStatus s) {
  switch (s) {
    case AssignStatus::kOptimal: return "optimal";
    case AssignStatus::kIncumbent: return "incumbent";
    case AssignStatus::kInfeasible: return "infeasible";
  }
  return "?";
}

namespace {

bool FitsIn(int w, int h, const Region& r) {
  return w <= r.width && h <= r.height;
}

}  // namespace

AssignModel BuildAssignModel(const AssignInput& in) {
  if (in.inst == nullptr || in.matrix == nullptr) {
    throw std::invalid_argument("assign: instance and matrix required");
  }
  const Instance& inst = *in.inst;
  if (static_cast<int>(in.profit.size()) != inst.size()) {
    throw std::invalid_argument("assign: profit vector size mismatch");
  }
  for (const Region& r : in.regions) {
    if (r.bin < 1 || r.bin > in.num_bins) {
      throw std::invalid_argument("assign: region bin out of range");
    }
  }
  AssignModel m;
  m.mode = in.mode;
  m.inst = in.inst;
  m.matrix = in.matrix;
  m.num_bins = in.num_bins;
  m.items = in.unpacked;
  m.regions = in.regions;
  const bool rows_apply =
      in.mode == AssignMode::kFull && !in.matrix->empty() &&
      in.matrix->bin_width == inst.bin_width &&
      in.matrix->bin_height == inst.bin_height;
  const int num_rows = rows_apply ? in.matrix->num_rows() : 0;

  const size_t n = m.items.size();
  m.profit.resize(n);
  m.cand_o.resize(n);
  m.cand_r.resize(n);
  m.resv_o.resize(n);
  m.resv_r.resize(n);
  for (size_t j = 0; j < n; ++j) {
    const int idx = m.items[j];
    const Item& it = inst.items[idx];
    m.profit[j] = in.profit[idx];
    const bool rot = inst.Rotatable(it) && it.width != it.height;
    std::vector<bool> bin_o(in.num_bins + 1, false), bin_r(in.num_bins + 1);
    for (size_t e = 0; e < m.regions.size(); ++e) {
      const Region& r = m.regions[e];
      if (static_cast<int64_t>(r.bin) * inst.processing_time - it.due_date >=
          in.ub) {
        continue;
      }
      if (FitsIn(it.width, it.height, r)) {
        m.cand_o[j].push_back(static_cast<int>(e));
        bin_o[r.bin] = true;
      }
      if (rot && FitsIn(it.height, it.width, r)) {
        m.cand_r[j].push_back(static_cast<int>(e));
        bin_r[r.bin] = true;
      }
    }
    if (in.mode == AssignMode::kFull) {
      for (int k = 1; k <= in.num_bins; ++k) {
        if (bin_o[k]) m.resv_o[j].push_back(k);
        if (bin_r[k]) m.resv_r[j].push_back(k);
      }
    }
    if (m.cand_o[j].empty() && m.cand_r[j].empty()) {
      m.trivially_infeasible = true;
    }
  }

  for (size_t a = 0; a < m.regions.size(); ++a) {
    for (size_t b = a + 1; b < m.regions.size(); ++b) {
      const Region& ra = m.regions[a];
      const Region& rb = m.regions[b];
      if (!RegionsOverlap(ra, rb)) continue;
      OverlapPattern p = ClassifyPair(ra, rb);
      if (p != OverlapPattern::kNone) {
        m.pairs.push_back({static_cast<int>(a), static_cast<int>(b), p});
        continue;
      }
      p = ClassifyPair(rb, ra);
      if (p != OverlapPattern::kNone) {
        m.pairs.push_back({static_cast<int>(b), static_cast<int>(a), p});
        continue;
      }
      // Equal anchors.
      m.pairs.push_back(
          {static_cast<int>(a), static_cast<int>(b), OverlapPattern::kNone});
    }
  }

  if (num_rows > 0) {
    m.rhs.assign(in.num_bins, std::vector<int64_t>(num_rows));
    for (int k = 0; k < in.num_bins; ++k) {
      for (int c = 0; c < num_rows; ++c) {
        int64_t load = 0;
        if (k < static_cast<int>(in.committed_load.size()) &&
            c < static_cast<int>(in.committed_load[k].size())) {
          load = in.committed_load[k][c];
        }
        m.rhs[k][c] = in.matrix->rows[c].scale - load;
      }
    }
  }
  return m;
}

namespace {

std::string Var(const char* name, int item_id, int index) {
  return std::string(name) + "(" + std::to_string(item_id) + "," +
         std::to_string(index) + ")";
}

std::string JoinSum(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) s += " + ";
    s += terms[i];
  }
  return s;
}

}  // namespace

std::string AssignModel::Dump() const {
  std::ostringstream out;
  const Instance& inst = *this->inst;
  const size_t n = items.size();
  const size_t ne = regions.size();
  // Per-region lists of (item id, orientation, width, height).
  struct Use {
    int j;
    int id;
    bool rot;
    int w;
    int h;
  };
  std::vector<std::vector<Use>> uses(ne);
  for (size_t j = 0; j < n; ++j) {
    const Item& it = inst.items[items[j]];
    const int jj = static_cast<int>(j);
    for (int e : cand_o[j]) {
      uses[e].push_back({jj, it.id, false, it.width, it.height});
    }
    for (int e : cand_r[j]) {
      uses[e].push_back({jj, it.id, true, it.height, it.width});
    }
  }
  auto phi = [&](const Use& u, int e) {
    return Var(u.rot ? "phi_r" : "phi_o", u.id, e);
  };
  auto used_sum = [&](int e) {
    std::vector<std::string> t;
    for (const Use& u : uses[e]) t.push_back(phi(u, e));
    return JoinSum(t);
  };

  {
    std::vector<std::string> t;
    for (size_t e = 0; e < ne; ++e) {
      const Region& r = regions[e];
      for (const Use& u : uses[e]) {
        std::ostringstream c;
        c.precision(12);
        c << profit[u.j] / static_cast<double>(r.area())
          << " " << phi(u, static_cast<int>(e));
        t.push_back(c.str());
      }
    }
    out << "objective: max " << JoinSum(t) << "\n";
  }
  for (size_t e = 0; e < ne; ++e) {
    out << "capacity[" << e << "]: " << used_sum(static_cast<int>(e))
        << " <= 1\n";
  }
  for (size_t j = 0; j < n; ++j) {
    const int id = inst.items[items[j]].id;
    std::vector<std::string> t;
    for (int e : cand_o[j]) t.push_back(Var("phi_o", id, e));
    for (int e : cand_r[j]) t.push_back(Var("phi_r", id, e));
    if (mode == AssignMode::kFull) {
      for (int k : resv_o[j]) t.push_back(Var("f_o", id, k));
      for (int k : resv_r[j]) t.push_back(Var("f_r", id, k));
    }
    out << "assign[" << id << "]: " << JoinSum(t)
        << (mode == AssignMode::kFull ? " = 1\n" : " <= 1\n");
  }
  if (!rhs.empty()) {
    for (int k = 1; k <= num_bins; ++k) {
      for (int c = 0; c < matrix->num_rows(); ++c) {
        const DffRow& row = matrix->rows[c];
        std::vector<std::string> t;
        for (size_t j = 0; j < n; ++j) {
          const int idx = items[j];
          const int id = inst.items[idx].id;
          for (int e : cand_o[j]) {
            if (regions[e].bin == k) {
              t.push_back(std::to_string(row.scaled_o[idx]) + " " +
                          Var("phi_o", id, e));
            }
          }
          for (int e : cand_r[j]) {
            if (regions[e].bin == k) {
              t.push_back(std::to_string(row.scaled_r[idx]) + " " +
                          Var("phi_r", id, e));
            }
          }
          for (int b : resv_o[j]) {
            if (b == k) {
              t.push_back(std::to_string(row.scaled_o[idx]) + " " +
                          Var("f_o", id, k));
            }
          }
          for (int b : resv_r[j]) {
            if (b == k) {
              t.push_back(std::to_string(row.scaled_r[idx]) + " " +
                          Var("f_r", id, k));
            }
          }
        }
        if (t.empty()) continue;
        out << "rows[" << k << "," << c << "]: " << JoinSum(t)
            << " <= " << rhs[k - 1][c] << "\n";
      }
    }
  }
  for (size_t e = 0; e < ne; ++e) {
    std::vector<std::string> tw, th;
    for (const Use& u : uses[e]) {
      tw.push_back(std::to_string(u.w) + " " + phi(u, static_cast<int>(e)));
      th.push_back(std::to_string(u.h) + " " + phi(u, static_cast<int>(e)));
    }
    out << "used_w[" << e << "]: " << JoinSum(tw) << " <= w(" << e << ")\n";
    out << "used_h[" << e << "]: " << JoinSum(th) << " <= h(" << e << ")\n";
  }
  for (const AssignPair& p : pairs) {
    const int a = p.first;
    const int b = p.second;
    const Region& ra = regions[a];
    const Region& rb = regions[b];
    const std::string tag =
        "[" + std::to_string(a) + "," + std::to_string(b) + "]: ";
    const std::string l = "l(" + std::to_string(a) + "," + std::to_string(b) + ")";
    switch (p.pattern) {
      case OverlapPattern::kI: {
        const std::string u =
            "u(" + std::to_string(b) + "," + std::to_string(a) + ")";
        out << "sep_x" << tag << ra.x << " + w(" << a << ") <= " << rb.x
            << " + " << ra.width << " (1 - " << l << ")\n";
        out << "sep_y_below" << tag << rb.y << " + h(" << b << ") <= " << ra.y
            << " + " << rb.height << " (1 - " << u << ")\n";
        out << "disjunction_below" << tag << l << " + " << u << " >= 1\n";
        break;
      }
      case OverlapPattern::kII: {
        const std::string u =
            "u(" + std::to_string(a) + "," + std::to_string(b) + ")";
        out << "sep_x" << tag << ra.x << " + w(" << a << ") <= " << rb.x
            << " + " << ra.width << " (1 - " << l << ")\n";
        out << "sep_y_above" << tag << ra.y << " + h(" << a << ") <= " << rb.y
            << " + " << ra.height << " (1 - " << u << ")\n";
        out << "disjunction_above" << tag << l << " + " << u << " >= 1\n";
        break;
      }
      case OverlapPattern::kIII:
        out << "stack_y" << tag << "h(" << b << ") + "
            << (rb.y + rb.height - ra.y) << " (" << used_sum(a)
            << ") <= " << rb.height << "\n";
        break;
      case OverlapPattern::kIV:
        out << "stack_x" << tag << "w(" << a << ") + "
            << (ra.x + ra.width - rb.x) << " (" << used_sum(b)
            << ") <= " << ra.width << "\n";
        break;
      case OverlapPattern::kNone:
        out << "same_anchor" << tag << "(" << used_sum(a) << ") + ("
            << used_sum(b) << ") <= 1\n";
        break;
    }
  }
  return out.str();
}

namespace {

struct Option {
  int region = -1;  // -1: reservation (bin set) or skip (bin == 0)
  int bin = 0;
  bool rotated = false;
  double unit = 0.0;  // objective contribution
};

class AssignSearch {
 public:
  AssignSearch(const AssignModel& m, const SearchBudget& budget)
      : m_(m), inst_(*m.inst), meter_(budget) {
    const size_t n = m.items.size();
    const size_t ne = m.regions.size();
    rows_ = m.rhs.empty() ? 0 : m.matrix->num_rows();
    neighbors_.resize(ne);
    for (const AssignPair& p : m.pairs) {
      neighbors_[p.first].push_back({p.second, p.pattern, true});
      neighbors_[p.second].push_back({p.first, p.pattern, false});
    }
    // Branching order.
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::vector<double> key(n, 0.0);
    for (size_t j = 0; j < n; ++j) {
      int64_t min_area = 0;
      for (int e : m.cand_o[j]) {
        const int64_t a = m.regions[e].area();
        if (min_area == 0 || a < min_area) min_area = a;
      }
      for (int e : m.cand_r[j]) {
        const int64_t a = m.regions[e].area();
        if (min_area == 0 || a < min_area) min_area = a;
      }
      key[j] = min_area > 0 ? m.profit[j] / static_cast<double>(min_area) : 0;
    }
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      if (key[a] != key[b]) return key[a] > key[b];
      return inst_.items[m.items[a]].id < inst_.items[m.items[b]].id;
    });
    options_.resize(n);
    for (size_t j = 0; j < n; ++j) {
      std::vector<Option>& ops = options_[j];
      for (int e : m.cand_o[j]) {
        ops.push_back({e, m.regions[e].bin, false,
                       m.profit[j] / static_cast<double>(m.regions[e].area())});
      }
      for (int e : m.cand_r[j]) {
        ops.push_back({e, m.regions[e].bin, true,
                       m.profit[j] / static_cast<double>(m.regions[e].area())});
      }
      std::stable_sort(ops.begin(), ops.end(),
                       [&](const Option& a, const Option& b) {
                         if (a.unit != b.unit) return a.unit > b.unit;
                         const Region& ra = m.regions[a.region];
                         const Region& rb = m.regions[b.region];
                         if (ra.bin != rb.bin) return ra.bin < rb.bin;
                         if (ra.x != rb.x) return ra.x < rb.x;
                         if (ra.y != rb.y) return ra.y < rb.y;
                         if (a.region != b.region) return a.region < b.region;
                         return !a.rotated && b.rotated;
                       });
      if (m.mode == AssignMode::kFull) {
        std::vector<Option> resv;
        for (int k : m.resv_o[j]) resv.push_back({-1, k, false, 0.0});
        for (int k : m.resv_r[j]) resv.push_back({-1, k, true, 0.0});
        std::stable_sort(resv.begin(), resv.end(),
                         [](const Option& a, const Option& b) {
                           if (a.bin != b.bin) return a.bin < b.bin;
                           return !a.rotated && b.rotated;
                         });
        ops.insert(ops.end(), resv.begin(), resv.end());
      } else {
        ops.push_back({-1, 0, false, 0.0});
      }
    }
    used_by_.assign(ne, -1);
    used_w_.assign(ne, 0);
    used_h_.assign(ne, 0);
    load_.assign(m.num_bins, std::vector<int64_t>(rows_, 0));
    choice_.assign(n, -1);
  }

  AssignResult Run() {
    AssignResult res;
    if (m_.mode == AssignMode::kRelaxed) {
      // The empty assignment is always feasible.
      have_ = true;
      best_ = 0.0;
      best_choice_.assign(m_.items.size(), -1);
      for (size_t j = 0; j < m_.items.size(); ++j) {
        best_choice_[j] = static_cast<int>(options_[j].size()) - 1;
      }
    }
    if (!(m_.trivially_infeasible && m_.mode == AssignMode::kFull)) {
      Dfs(0, 0.0);
    }
    res.nodes = meter_.nodes();
    res.exhausted = meter_.exhausted();
    if (!have_) {
      res.status = AssignStatus::kInfeasible;
      return res;
    }
    res.status =
        meter_.exhausted() ? AssignStatus::kIncumbent : AssignStatus::kOptimal;
    res.objective = best_;
    for (size_t j = 0; j < m_.items.size(); ++j) {
      const Option& op = options_[j][best_choice_[j]];
      const int idx = m_.items[j];
      if (op.region >= 0) {
        res.placements.push_back({idx, op.region, op.rotated});
      } else if (op.bin > 0) {
        res.reservations.push_back({idx, op.bin, op.rotated});
      }
    }
    auto by_item = [](const auto& a, const auto& b) { return a.item < b.item; };
    std::sort(res.placements.begin(), res.placements.end(), by_item);
    std::sort(res.reservations.begin(), res.reservations.end(), by_item);
    return res;
  }

 private:
  struct Neighbor {
    int other;
    OverlapPattern pattern;
    bool self_first;
  };

  int64_t Alpha(int c, int j, bool rotated) const {
    const DffRow& row = m_.matrix->rows[c];
    const int idx = m_.items[j];
    return rotated ? row.scaled_r[idx] : row.scaled_o[idx];
  }

  // Pairwise constraints between region e (with extents w x h) and every used
  // overlapping region.
  bool GeometryOk(int e, int w, int h) const {
    const Region& re = m_.regions[e];
    for (const Neighbor& nb : neighbors_[e]) {
      const int f = nb.other;
      if (used_by_[f] < 0) continue;
      const Region& rf = m_.regions[f];
      const int wf = used_w_[f];
      const int hf = used_h_[f];
      // (a, b) is the ordered pair the pattern refers to.
      const Region& ra = nb.self_first ? re : rf;
      const Region& rb = nb.self_first ? rf : re;
      const int wa = nb.self_first ? w : wf;
      const int ha = nb.self_first ? h : hf;
      const int hb = nb.self_first ? hf : h;
      bool ok = true;
      switch (nb.pattern) {
        case OverlapPattern::kI:
          ok = ra.x + wa <= rb.x || rb.y + hb <= ra.y;
          break;
        case OverlapPattern::kII:
          ok = ra.x + wa <= rb.x || ra.y + ha <= rb.y;
          break;
        case OverlapPattern::kIII:
          ok = rb.y + hb <= ra.y;
          break;
        case OverlapPattern::kIV:
          ok = ra.x + wa <= rb.x;
          break;
        case OverlapPattern::kNone:
          ok = false;
          break;
      }
      if (!ok) return false;
    }
    return true;
  }

  bool RowsOk(int j, int bin, bool rotated) const {
    for (int c = 0; c < rows_; ++c) {
      if (load_[bin - 1][c] + Alpha(c, j, rotated) > m_.rhs[bin - 1][c]) {
        return false;
      }
    }
    return true;
  }

  bool Feasible(int j, const Option& op) const {
    if (op.region >= 0) {
      if (used_by_[op.region] >= 0) return false;
      const Item& it = inst_.items[m_.items[j]];
      const int w = op.rotated ? it.height : it.width;
      const int h = op.rotated ? it.width : it.height;
      if (!GeometryOk(op.region, w, h)) return false;
    } else if (op.bin == 0) {
      return true;
    }
    return rows_ == 0 || RowsOk(j, op.bin, op.rotated);
  }

  void Apply(int j, const Option& op, int sign) {
    if (op.region >= 0) {
      const Item& it = inst_.items[m_.items[j]];
      if (sign > 0) {
        used_by_[op.region] = j;
        used_w_[op.region] = op.rotated ? it.height : it.width;
        used_h_[op.region] = op.rotated ? it.width : it.height;
      } else {
        used_by_[op.region] = -1;
        used_w_[op.region] = 0;
        used_h_[op.region] = 0;
      }
    }
    if (op.bin > 0) {
      for (int c = 0; c < rows_; ++c) {
        load_[op.bin - 1][c] += sign * Alpha(c, j, op.rotated);
      }
    }
  }

  double UpperBound(size_t depth) const {
    double ub = 0.0;
    for (size_t d = depth; d < order_.size(); ++d) {
      const int j = order_[d];
      for (const Option& op : options_[j]) {
        // Options are sorted by unit profit; the first free one is the best.
        if (op.region < 0) break;
        if (used_by_[op.region] < 0) {
          ub += op.unit;
          break;
        }
      }
    }
    return ub;
  }

  // Every remaining item still has a feasible option (full mode).
  bool ForwardOk(size_t depth) const {
    for (size_t d = depth; d < order_.size(); ++d) {
      const int j = order_[d];
      bool any = false;
      for (const Option& op : options_[j]) {
        if (Feasible(j, op)) {
          any = true;
          break;
        }
      }
      if (!any) return false;
    }
    return true;
  }

  bool Better(double value) const {
    if (!have_) return true;
    const double eps = 1e-9 * std::max(1.0, std::fabs(best_));
    return value > best_ + eps;
  }

  void Dfs(size_t depth, double value) {
    if (!meter_.Tick()) return;
    if (depth == order_.size()) {
      if (Better(value)) {
        have_ = true;
        best_ = value;
        best_choice_ = choice_;
      }
      return;
    }
    if (have_ && !Better(value + UpperBound(depth))) return;
    if (m_.mode == AssignMode::kFull && !ForwardOk(depth)) return;
    const int j = order_[depth];
    const std::vector<Option>& ops = options_[j];
    for (size_t o = 0; o < ops.size(); ++o) {
      if (meter_.exhausted()) return;
      const Option& op = ops[o];
      if (!Feasible(j, op)) continue;
      Apply(j, op, +1);
      choice_[j] = static_cast<int>(o);
      Dfs(depth + 1, value + op.unit);
      choice_[j] = -1;
      Apply(j, op, -1);
    }
  }

  const AssignModel& m_;
  const Instance& inst_;
  BudgetMeter meter_;
  int rows_ = 0;
  std::vector<std::vector<Neighbor>> neighbors_;
  std::vector<int> order_;
  std::vector<std::vector<Option>> options_;
  std::vector<int> used_by_;
  std::vector<int> used_w_;
  std::vector<int> used_h_;
  std::vector<std::vector<int64_t>> load_;
  std::vector<int> choice_;
  bool have_ = false;
  double best_ = 0.0;
  std::vector<int> best_choice_;
};

}  // namespace

AssignResult SolveAssign(const AssignModel& model, const SearchBudget& budget) {
  AssignSearch search(model, budget);
  return search.Run();
}

}  // namespace ddbpp
