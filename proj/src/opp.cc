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

#include "ddbpp/opp.h"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ddbpp {
namespace {

using Words = std::vector<uint64_t>;

void SetBit(Words& b, int i) { b[i >> 6] |= uint64_t{1} << (i & 63); }

// dst[i] = src[i + s] for every bit position i.
void ShiftDown(const Words& src, int s, Words& dst) {
  const int n = static_cast<int>(src.size());
  if (n == 1) {
    dst[0] = s < 64 ? src[0] >> s : 0;
    return;
  }
  const int ws = s >> 6;
  const int bs = s & 63;
  for (int i = 0; i < n; ++i) {
    const int j = i + ws;
    uint64_t v = j < n ? src[j] >> bs : 0;
    if (bs != 0 && j + 1 < n) v |= src[j + 1] << (64 - bs);
    dst[i] = v;
  }
}

// Subset sums of side choices bounded by `limit`, as a bitset.
Words SubsetSums(const std::vector<std::pair<int, int>>& choices, int limit,
                 int words) {
  Words reach(words, 0);
  SetBit(reach, 0);
  Words shifted(words), next(words);
  for (const auto& [a, b] : choices) {
    next = reach;
    for (int side : {a, b}) {
      if (side <= 0 || side > limit) continue;
      // shifted = reach << side
      const int ws = side >> 6;
      const int bs = side & 63;
      for (int i = words - 1; i >= 0; --i) {
        const int j = i - ws;
        uint64_t v = j >= 0 ? reach[j] << bs : 0;
        if (bs != 0 && j - 1 >= 0) v |= reach[j - 1] >> (64 - bs);
        shifted[i] = v;
      }
      for (int i = 0; i < words; ++i) next[i] |= shifted[i];
      if (a == b) break;
    }
    reach.swap(next);
  }
  // Clear bits above limit.
  for (int i = limit + 1; i < words * 64; ++i) {
    reach[i >> 6] &= ~(uint64_t{1} << (i & 63));
  }
  return reach;
}

struct Cand {
  int w = 0;
  int h = 0;
  bool rot = false;
};

class PackSearch {
 public:
  PackSearch(std::span<const PackItem> items, int bin_w, int bin_h,
             const DffMatrix* matrix, const SearchBudget& budget)
      : bin_w_(bin_w), bin_h_(bin_h), meter_(budget) {
    const int n = static_cast<int>(items.size());
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      const int64_t aa = int64_t{items[a].width} * items[a].height;
      const int64_t ab = int64_t{items[b].width} * items[b].height;
      if (aa != ab) return aa > ab;
      return items[a].id < items[b].id;
    });
    for (int k : order_) items_.push_back(items[k]);

    wx_ = (bin_w + 64) / 64;
    wy_ = (bin_h + 64) / 64;
    occ_.assign(static_cast<size_t>(bin_h) * wx_, 0);
    col_fill_.assign(bin_w, 0);
    row_fill_.assign(bin_h, 0);

    cands_.resize(n);
    xs_.resize(n);
    ys_.resize(n);
    same_as_prev_.assign(n, false);
    for (int i = 0; i < n; ++i) {
      const PackItem& it = items_[i];
      cands_[i].push_back({it.width, it.height, false});
      if (it.width != it.height && it.height <= bin_w && it.width <= bin_h) {
        cands_[i].push_back({it.height, it.width, true});
      }
      std::vector<std::pair<int, int>> wc, hc;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const PackItem& o = items_[j];
        const bool r = o.height <= bin_w && o.width <= bin_h;
        wc.emplace_back(o.width, r ? o.height : o.width);
        hc.emplace_back(o.height, r ? o.width : o.height);
      }
      xs_[i] = SubsetSums(wc, bin_w, wx_);
      ys_[i] = SubsetSums(hc, bin_h, wy_);
      if (i > 0 && it.width == items_[i - 1].width &&
          it.height == items_[i - 1].height) {
        same_as_prev_[i] = true;
      }
    }

    // Suffix data for pruning.
    suffix_area_.assign(n + 1, 0);
    suffix_min_w_.assign(n + 1, bin_w + 1);
    suffix_min_h_.assign(n + 1, bin_h + 1);
    for (int i = n - 1; i >= 0; --i) {
      suffix_area_[i] =
          suffix_area_[i + 1] + int64_t{items_[i].width} * items_[i].height;
      int mw = items_[i].width, mh = items_[i].height;
      for (const Cand& c : cands_[i]) {
        mw = std::min(mw, c.w);
        mh = std::min(mh, c.h);
      }
      suffix_min_w_[i] = std::min(suffix_min_w_[i + 1], mw);
      suffix_min_h_[i] = std::min(suffix_min_h_[i + 1], mh);
    }
    if (matrix != nullptr && !matrix->empty()) {
      const int m = matrix->num_rows();
      cap_.resize(m);
      alpha_.assign(m, std::vector<std::array<int64_t, 2>>(n));
      suffix_alpha_.assign(m, std::vector<int64_t>(n + 1, 0));
      for (int c = 0; c < m; ++c) {
        const DffRow& row = matrix->rows[c];
        cap_[c] = row.scale;
        for (int i = 0; i < n; ++i) {
          const PackItem& it = items_[i];
          int64_t ao, ar;
          if (it.column >= 0) {
            ao = row.scaled_o[it.column];
            ar = row.scaled_r[it.column];
          } else {
            ao = matrix->ScaledAlpha(c, it.width, it.height);
            ar = it.height <= bin_w && it.width <= bin_h
                     ? matrix->ScaledAlpha(c, it.height, it.width)
                     : -1;
          }
          alpha_[c][i] = {ao, ar < 0 ? ao : ar};
        }
        for (int i = n - 1; i >= 0; --i) {
          suffix_alpha_[c][i] =
              suffix_alpha_[c][i + 1] +
              std::min(alpha_[c][i][0], cands_[i].size() > 1 ? alpha_[c][i][1]
                                                             : alpha_[c][i][0]);
        }
      }
      load_.assign(m, 0);
    }
    placed_.resize(n);
    runs_.assign(n, Words(static_cast<size_t>(bin_h) * wx_));
    acc_.assign(n, Words(wx_));
    run_.resize(wx_);
    tmp_.resize(wx_);
    span_.resize(wx_);
    col_mask_.resize(wx_);
    RangeMask(0, bin_w, col_mask_);
  }

  PackResult Run(std::span<const PackItem> original) {
    PackResult res;
    const bool found = Dfs(0);
    res.nodes = meter_.nodes();
    if (found) {
      res.status = Feasibility::kFeasible;
      for (size_t i = 0; i < items_.size(); ++i) {
        res.placements.push_back({items_[i].id, placed_[i].x, placed_[i].y,
                                  placed_[i].rotated});
      }
      std::vector<PackPlacement> by_input;
      for (const PackItem& it : original) {
        for (const PackPlacement& p : res.placements) {
          if (p.id == it.id) {
            by_input.push_back(p);
            break;
          }
        }
      }
      if (by_input.size() == res.placements.size()) {
        res.placements = std::move(by_input);
      }
    } else {
      res.status =
          meter_.exhausted() ? Feasibility::kUnknown : Feasibility::kInfeasible;
    }
    return res;
  }

 private:
  bool Prune(int depth) const {
    if (depth == static_cast<int>(items_.size())) return false;
    const int64_t rem = suffix_area_[depth];
    if (rem > int64_t{bin_w_} * bin_h_ - placed_area_) return true;
    for (size_t c = 0; c < cap_.size(); ++c) {
      if (suffix_alpha_[c][depth] > cap_[c] - load_[c]) return true;
    }
    // Column profile: free height of a column below the smallest unplaced
    // side is unusable; likewise for rows.
    const int min_h = suffix_min_h_[depth];
    int64_t usable = 0;
    for (int x = 0; x < bin_w_; ++x) {
      const int f = bin_h_ - col_fill_[x];
      if (f >= min_h) usable += f;
    }
    if (rem > usable) return true;
    const int min_w = suffix_min_w_[depth];
    usable = 0;
    for (int y = 0; y < bin_h_; ++y) {
      const int f = bin_w_ - row_fill_[y];
      if (f >= min_w) usable += f;
    }
    return rem > usable;
  }

  // Bits [lo, hi) set.
  void RangeMask(int lo, int hi, Words& out) const {
    for (int i = 0; i < wx_; ++i) {
      const int a = std::max(lo - i * 64, 0);
      const int b = std::min(hi - i * 64, 64);
      if (a >= b) {
        out[i] = 0;
      } else {
        const uint64_t upper = b == 64 ? ~uint64_t{0} : (uint64_t{1} << b) - 1;
        out[i] = upper & ~((uint64_t{1} << a) - 1);
      }
    }
  }

  void Mark(int x, int y, int w, int h, int delta) {
    RangeMask(x, x + w, span_);
    for (int yy = y; yy < y + h; ++yy) {
      uint64_t* row = &occ_[static_cast<size_t>(yy) * wx_];
      for (int i = 0; i < wx_; ++i) row[i] ^= span_[i];
      row_fill_[yy] += delta * w;
    }
    for (int xx = x; xx < x + w; ++xx) col_fill_[xx] += delta * h;
    placed_area_ += int64_t{delta} * w * h;
  }

  // out[y] gets bit x set iff columns x..x+w-1 of row y are free.
  void RowRuns(int w, uint64_t* out) {
    for (int y = 0; y < bin_h_; ++y) {
      const uint64_t* row = &occ_[static_cast<size_t>(y) * wx_];
      for (int i = 0; i < wx_; ++i) run_[i] = ~row[i] & col_mask_[i];
      int len = 1;
      while (len * 2 <= w) {
        ShiftDown(run_, len, tmp_);
        for (int i = 0; i < wx_; ++i) run_[i] &= tmp_[i];
        len *= 2;
      }
      if (len < w) {
        ShiftDown(run_, w - len, tmp_);
        for (int i = 0; i < wx_; ++i) run_[i] &= tmp_[i];
      }
      std::copy(run_.begin(), run_.end(), out + static_cast<size_t>(y) * wx_);
    }
  }

  // acc gets the start columns in `xs` that are free for a w-wide run in
  // every row y..y+h-1; false when none survives.
  bool StartColumns(const uint64_t* runs, int y, int h, const Words& xs,
                    uint64_t* acc) const {
    uint64_t alive = 0;
    for (int i = 0; i < wx_; ++i) {
      acc[i] = runs[static_cast<size_t>(y) * wx_ + i] & xs[i];
      alive |= acc[i];
    }
    for (int yy = y + 1; yy < y + h && alive != 0; ++yy) {
      alive = 0;
      const uint64_t* r = runs + static_cast<size_t>(yy) * wx_;
      for (int i = 0; i < wx_; ++i) {
        acc[i] &= r[i];
        alive |= acc[i];
      }
    }
    return alive != 0;
  }

  bool Dfs(int depth) {
    const int n = static_cast<int>(items_.size());
    if (depth == n) return true;
    if (Prune(depth)) return false;
    const PackItem& it = items_[depth];
    const Words& xs = xs_[depth];
    const Words& ys = ys_[depth];
    int prev_rot = -1, prev_y = -1, prev_x = -1;
    if (same_as_prev_[depth]) {
      prev_rot = placed_[depth - 1].rotated ? 1 : 0;
      prev_y = placed_[depth - 1].y;
      prev_x = placed_[depth - 1].x;
    }
    uint64_t* runs = runs_[depth].data();
    uint64_t* acc = acc_[depth].data();
    for (const Cand& c : cands_[depth]) {
      const int rot = c.rot ? 1 : 0;
      if (rot < prev_rot) continue;
      RowRuns(c.w, runs);
      for (int y = 0; y + c.h <= bin_h_; ++y) {
        if (!((ys[y >> 6] >> (y & 63)) & 1)) continue;
        if (rot == prev_rot && y < prev_y) continue;
        if (!StartColumns(runs, y, c.h, xs, acc)) continue;
        for (int i = 0; i < wx_; ++i) {
          uint64_t bits = acc[i];
          while (bits != 0) {
            const int x = i * 64 + std::countr_zero(bits);
            bits &= bits - 1;
            if (rot == prev_rot && y == prev_y && x <= prev_x) continue;
            if (!meter_.Tick()) return false;
            Mark(x, y, c.w, c.h, 1);
            for (size_t k = 0; k < cap_.size(); ++k) {
              load_[k] += alpha_[k][depth][rot];
            }
            placed_[depth] = {it.id, x, y, c.rot};
            const bool ok = Dfs(depth + 1);
            for (size_t k = 0; k < cap_.size(); ++k) {
              load_[k] -= alpha_[k][depth][rot];
            }
            Mark(x, y, c.w, c.h, -1);
            if (ok) return true;
            if (meter_.exhausted()) return false;
          }
        }
      }
    }
    return false;
  }

  int bin_w_;
  int bin_h_;
  BudgetMeter meter_;
  std::vector<int> order_;
  std::vector<PackItem> items_;
  int wx_ = 1;
  int wy_ = 1;
  Words occ_;
  std::vector<int> col_fill_;
  std::vector<int> row_fill_;
  int64_t placed_area_ = 0;
  std::vector<std::vector<Cand>> cands_;
  std::vector<Words> xs_;
  std::vector<Words> ys_;
  std::vector<bool> same_as_prev_;
  std::vector<int64_t> suffix_area_;
  std::vector<int> suffix_min_w_;
  std::vector<int> suffix_min_h_;
  std::vector<int64_t> cap_;
  std::vector<std::vector<std::array<int64_t, 2>>> alpha_;
  std::vector<std::vector<int64_t>> suffix_alpha_;
  std::vector<int64_t> load_;
  std::vector<PackPlacement> placed_;
  std::vector<Words> runs_;  // per depth: RowRuns of the current orientation
  std::vector<Words> acc_;   // per depth: surviving start columns
  Words run_, tmp_, span_, col_mask_;
};

}  // namespace

PackResult Pack(std::span<const PackItem> items, int bin_w, int bin_h,
                const DffMatrix* matrix, const SearchBudget& budget) {
  if (bin_w <= 0 || bin_h <= 0) {
    throw std::domain_error("pack: non-positive bin dimension");
  }
  for (const PackItem& it : items) {
    if (it.width <= 0 || it.height <= 0 || it.width > bin_w ||
        it.height > bin_h) {
      throw std::domain_error("pack: item " + std::to_string(it.id) +
                              " does not fit the bin unrotated");
    }
  }
  if (matrix != nullptr &&
      (matrix->bin_width != bin_w || matrix->bin_height != bin_h)) {
    matrix = nullptr;
  }
  PackSearch search(items, bin_w, bin_h, matrix, budget);
  return search.Run(items);
}

}  // namespace ddbpp
