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

#include "ddbpp/heur.h"

#include <algorithm>
#include <stdexcept>

namespace ddbpp {

namespace {

bool Intersects(const Region& a, const Region& b) {
  return a.x < b.x + b.width && b.x < a.x + a.width && a.y < b.y + b.height &&
         b.y < a.y + a.height;
}

bool CoversColumn(const Region& r, int x) { return r.x <= x && x < r.x + r.width; }
bool CoversRow(const Region& r, int y) { return r.y <= y && y < r.y + r.height; }

// Region above obstacle `o`.
Region TopRegion(int bin, int bin_w, int bin_h, const Region& o,
                 std::span<const Region> obstacles) {
  const int y0 = o.y + o.height;
  Region r{bin, o.x, y0, 0, 0};
  if (y0 >= bin_h) return r;
  int top = bin_h;
  int left = 0;
  int right = bin_w;
  for (const Region& j : obstacles) {
    if (CoversColumn(j, o.x) && j.y + j.height > y0) {
      top = std::min(top, std::max(j.y, y0));
    }
    if (CoversRow(j, y0)) {
      if (j.x + j.width <= o.x) left = std::max(left, j.x + j.width);
      if (j.x > o.x) right = std::min(right, j.x);
    }
  }
  if (top <= y0) return r;
  r = {bin, left, y0, right - left, top - y0};
  int cut = top;
  for (const Region& j : obstacles) {
    if (Intersects(j, r)) cut = std::min(cut, j.y);
  }
  r.height = cut - y0;
  return r;
}

// Region to the right of obstacle `o`.
Region RightRegion(int bin, int bin_w, int bin_h, const Region& o,
                   std::span<const Region> obstacles) {
  const int x0 = o.x + o.width;
  Region r{bin, x0, o.y, 0, 0};
  if (x0 >= bin_w) return r;
  int right = bin_w;
  int bottom = 0;
  int top = bin_h;
  for (const Region& j : obstacles) {
    if (CoversRow(j, o.y) && j.x + j.width > x0) {
      right = std::min(right, std::max(j.x, x0));
    }
    if (CoversColumn(j, x0)) {
      if (j.y + j.height <= o.y) bottom = std::max(bottom, j.y + j.height);
      if (j.y > o.y) top = std::min(top, j.y);
    }
  }
  if (right <= x0) return r;
  r = {bin, x0, bottom, right - x0, top - bottom};
  int cut = right;
  for (const Region& j : obstacles) {
    if (Intersects(j, r)) cut = std::min(cut, j.x);
  }
  r.width = cut - x0;
  return r;
}

}  // namespace

std::vector<Region> GenerateRegions(int bin, int bin_w, int bin_h,
                                    std::span<const Region> obstacles) {
  std::vector<Region> out;
  if (obstacles.empty()) {
    out.push_back({bin, 0, 0, bin_w, bin_h});
    return out;
  }
  for (const Region& o : obstacles) {
    for (const Region& r : {TopRegion(bin, bin_w, bin_h, o, obstacles),
                            RightRegion(bin, bin_w, bin_h, o, obstacles)}) {
      if (r.width > 0 && r.height > 0) out.push_back(r);
    }
  }
  // Per anchor keep the largest (then widest) region.
  std::sort(out.begin(), out.end(), [](const Region& a, const Region& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    if (a.area() != b.area()) return a.area() > b.area();
    return a.width > b.width;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Region& a, const Region& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            out.end());
  return out;
}

bool RegionUseful(const Instance& inst, const Region& r,
                  std::span<const int> unpacked, int64_t ub) {
  for (int i : unpacked) {
    const Item& it = inst.items[i];
    if (static_cast<int64_t>(r.bin) * inst.processing_time - it.due_date >=
        ub) {
      continue;
    }
    if (it.width <= r.width && it.height <= r.height) return true;
    if (inst.Rotatable(it) && it.height <= r.width && it.width <= r.height) {
      return true;
    }
  }
  return false;
}

namespace {

class HeurRun {
 public:
  HeurRun(const Instance& inst, const DffMatrix& matrix, int64_t ub,
          int num_bins, std::span<const double> profit, const HeurOptions& o)
      : inst_(inst),
        matrix_(matrix),
        ub_(ub),
        num_bins_(num_bins),
        profit_(profit.begin(), profit.end()),
        opts_(o) {
    if (static_cast<int>(profit_.size()) != inst.size()) {
      throw std::invalid_argument("heur: profit vector size mismatch");
    }
    rows_ = (!matrix.empty() && matrix.bin_width == inst.bin_width &&
             matrix.bin_height == inst.bin_height)
                ? matrix.num_rows()
                : 0;
    packed_.assign(inst.size(), false);
    obstacles_.resize(std::max(num_bins, 0));
    load_.assign(std::max(num_bins, 0), std::vector<int64_t>(rows_, 0));
  }

  HeurResult Run() {
    HeurResult res;
    if (inst_.size() == 0) {
      res.feasible = true;
      res.solution = MakeSolution(inst_, {});
      return res;
    }
    if (num_bins_ < 1) return res;
    for (int k = 1; k <= num_bins_; ++k) {
      regions_.push_back({k, 0, 0, inst_.bin_width, inst_.bin_height});
    }
    while (true) {
      ++stats_.iterations;
      AssignInput in;
      in.inst = &inst_;
      in.matrix = &matrix_;
      in.ub = ub_;
      in.num_bins = num_bins_;
      for (int i = 0; i < inst_.size(); ++i) {
        if (!packed_[i]) in.unpacked.push_back(i);
      }
      in.profit = profit_;
      in.regions = regions_;
      in.committed_load = load_;
      in.mode = opts_.mode;
      const AssignModel model = BuildAssignModel(in);
      for (const auto& bin_rhs : model.rhs) {
        for (int64_t v : bin_rhs) {
          if (v < 0) throw std::logic_error("heur: negative row capacity");
        }
      }
      if (model.trivially_infeasible) return Finish(res);
      const AssignResult ar = SolveAssign(model, opts_.assign_budget);
      stats_.assign_nodes += ar.nodes;
      if (ar.exhausted) ++stats_.assign_exhausted;
      if (ar.status == AssignStatus::kInfeasible) return Finish(res);
      if (ar.placements.empty()) {
        stats_.no_progress = true;
        return Finish(res);
      }
      for (const AssignPlacement& p : ar.placements) {
        const Region& r = regions_[p.region];
        Place(p.item, r.bin, r.x, r.y, p.rotated);
      }
      if (static_cast<int>(placed_.size()) == inst_.size()) {
        res.feasible = true;
        res.solution = MakeSolution(inst_, placed_);
        return Finish(res);
      }
      RefreshRegions();
    }
  }

 private:
  HeurResult& Finish(HeurResult& res) {
    res.stats = stats_;
    return res;
  }

  void Place(int idx, int bin, int x, int y, bool rotated) {
    const Item& it = inst_.items[idx];
    packed_[idx] = true;
    placed_.push_back({it.id, bin, x, y, rotated});
    const int w = rotated ? it.height : it.width;
    const int h = rotated ? it.width : it.height;
    obstacles_[bin - 1].push_back({bin, x, y, w, h});
    for (int c = 0; c < rows_; ++c) {
      const DffRow& row = matrix_.rows[c];
      load_[bin - 1][c] += rotated ? row.scaled_r[idx] : row.scaled_o[idx];
    }
  }

  void Block(const Region& r) {
    obstacles_[r.bin - 1].push_back(r);
    for (int c = 0; c < rows_; ++c) {
      load_[r.bin - 1][c] += matrix_.ScaledAlpha(c, r.width, r.height);
    }
    ++stats_.blocked_regions;
  }

  // Regenerates the regions of every bin and blocks useless ones until all
  // remaining regions can take some unpacked item.
  void RefreshRegions() {
    std::vector<int> unpacked;
    for (int i = 0; i < inst_.size(); ++i) {
      if (!packed_[i]) unpacked.push_back(i);
    }
    while (true) {
      regions_.clear();
      for (int k = 1; k <= num_bins_; ++k) {
        const std::vector<Region> rk = GenerateRegions(
            k, inst_.bin_width, inst_.bin_height, obstacles_[k - 1]);
        regions_.insert(regions_.end(), rk.begin(), rk.end());
      }
      std::vector<Region> blocked;
      for (const Region& r : regions_) {
        if (RegionUseful(inst_, r, unpacked, ub_)) continue;
        bool clash = false;
        for (const Region& b : blocked) {
          if (RegionsOverlap(r, b)) {
            clash = true;
            break;
          }
        }
        if (clash) {
          ++stats_.blocked_skipped;
          continue;
        }
        blocked.push_back(r);
      }
      if (blocked.empty()) return;
      for (const Region& b : blocked) Block(b);
    }
  }

  const Instance& inst_;
  const DffMatrix& matrix_;
  int64_t ub_;
  int num_bins_;
  std::vector<double> profit_;
  HeurOptions opts_;
  int rows_ = 0;
  std::vector<bool> packed_;
  std::vector<Placement> placed_;
  std::vector<std::vector<Region>> obstacles_;
  std::vector<std::vector<int64_t>> load_;
  std::vector<Region> regions_;
  HeurStats stats_;
};

}  // namespace

HeurResult Heur(const Instance& inst, const DffMatrix& matrix, int64_t ub,
                int num_bins, std::span<const double> profit,
                const HeurOptions& opts) {
  HeurRun run(inst, matrix, ub, num_bins, profit, opts);
  return run.Run();
}

}  // namespace ddbpp
