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

#include "ddbpp/ffit.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ddbpp/bounds.h"
#include "ddbpp/opp.h"

namespace ddbpp {
namespace {

class FirstFitRun {
 public:
  FirstFitRun(const Instance& inst, const DffMatrix& matrix,
              const FfOptions& opts)
      : inst_(inst), matrix_(matrix), opts_(opts) {
    if (opts.sigma && *opts.sigma < 1) {
      throw std::invalid_argument("sigma must be at least 1");
    }
  }

  FfResult Run() {
    const int n = inst_.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return inst_.items[a].due_date < inst_.items[b].due_date;
    });
    const std::vector<int>& order = order_;
    // Remaining items as ranks into `order`, kept sorted.
    std::vector<int> pending(n);
    std::iota(pending.begin(), pending.end(), 0);
    std::vector<Placement> placements;
    int bin = 0;
    while (!pending.empty()) {
      ++bin;
      BinCountAccumulator acc(inst_, matrix_);
      std::vector<int> members;  // ranks, in insertion order
      // Greedy prefix while the bound allows a single bin.
      size_t take = 0;
      while (take < pending.size() &&
             acc.LbWith(order[pending[take]]) <= 1) {
        acc.Add(order[pending[take]]);
        members.push_back(pending[take]);
        ++take;
      }
      pending.erase(pending.begin(), pending.begin() + take);
      std::vector<PackPlacement> layout;
      // Trim from the back until the bin packs.
      while (true) {
        if (members.size() == 1) {
          layout = {{inst_.items[order[members[0]]].id, 0, 0, false}};
          break;
        }
        PackResult r = CallPack(members, nullptr);
        if (r.feasible()) {
          layout = std::move(r.placements);
          break;
        }
        const int last = members.back();
        members.pop_back();
        acc.Remove(order[last]);
        pending.insert(std::lower_bound(pending.begin(), pending.end(), last),
                       last);
      }
      // Sequential fill.
      int failures = 0;
      int mu = std::max(inst_.bin_width, inst_.bin_height) + 1;
      for (size_t pos = 0; pos < pending.size();) {
        if (opts_.sigma && failures >= *opts_.sigma) break;
        const int rank = pending[pos];
        const Item& it = inst_.items[order[rank]];
        if (opts_.mu_strategy && it.max_side() >= mu) {
          ++stats_.mu_skips;
          ++pos;
          continue;
        }
        bool ok = acc.LbWith(order[rank]) <= 1;
        if (ok) {
          members.push_back(rank);
          PackResult r = CallPack(members, nullptr);
          members.pop_back();
          ok = r.feasible();
          if (ok) {
            members.push_back(rank);
            acc.Add(order[rank]);
            layout = std::move(r.placements);
            pending.erase(pending.begin() + pos);
            failures = 0;
            continue;
          }
        }
        ++failures;
        if (opts_.mu_strategy) {
          const int side = it.max_side();
          const PackItem strip{0, side, 1, -1};
          // A strip longer than the bin width must lie vertically.
          bool fits = false;
          if (side <= std::max(inst_.bin_width, inst_.bin_height)) {
            PackItem probe = strip;
            if (side > inst_.bin_width) std::swap(probe.width, probe.height);
            if (acc.LbWithRect(probe.width, probe.height) <= 1) {
              fits = CallPack(members, &probe).feasible();
            }
          }
          if (!fits) mu = std::min(mu, side);
        }
        ++pos;
      }
      for (const PackPlacement& p : layout) {
        placements.push_back({p.id, bin, p.x, p.y, p.rotated});
      }
    }
    return {MakeSolution(inst_, std::move(placements)), stats_};
  }

 private:
  PackResult CallPack(const std::vector<int>& members, const PackItem* extra) {
    std::vector<PackItem> items;
    items.reserve(members.size() + 1);
    for (int rank : members) {
      const int idx = order_[rank];
      const Item& it = inst_.items[idx];
      items.push_back({it.id, it.width, it.height, idx});
    }
    if (extra != nullptr) items.push_back(*extra);
    ++stats_.pack_calls;
    PackResult r = Pack(items, inst_.bin_width, inst_.bin_height, &matrix_,
                        opts_.pack_budget);
    stats_.pack_nodes += r.nodes;
    if (r.status == Feasibility::kUnknown) ++stats_.pack_unknown;
    return r;
  }

  const Instance& inst_;
  const DffMatrix& matrix_;
  const FfOptions& opts_;
  FfStats stats_;
  std::vector<int> order_;  // rank -> item index
};

}  // namespace

FfResult FirstFit(const Instance& inst, const DffMatrix& matrix,
                  const FfOptions& opts) {
  FirstFitRun run(inst, matrix, opts);
  return run.Run();
}

}  // namespace ddbpp
