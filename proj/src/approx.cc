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

#include "ddbpp/approx.h"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "ddbpp/bounds.h"
#include "ddbpp/generator.h"
#include "ddbpp/heur.h"

namespace ddbpp {

namespace {

int64_t StepFor(int64_t ub, std::optional<int> delta_percent) {
  if (!delta_percent) return 1;
  const int64_t mag = std::llabs(ub) * *delta_percent;
  const int64_t step = (mag + 99) / 100;
  return step < 1 ? 1 : step;
}

}  // namespace

ApproxResult Approx(const Instance& inst, const DffMatrix& matrix,
                    const ApproxOptions& opts) {
  if (opts.a_lim_relaxed < 1 || opts.a_lim_full < 1) {
    throw std::invalid_argument("approx: attempt limits must be >= 1");
  }
  if (opts.delta_percent &&
      (*opts.delta_percent <= 0 || *opts.delta_percent >= 100)) {
    throw std::invalid_argument("approx: delta must lie in (0, 100)");
  }
  ApproxResult res;
  FfResult ff = FirstFit(inst, matrix, opts.ff);
  res.solution = ff.solution;
  res.ff_l_max = ff.solution.l_max;
  res.ff_stats = ff.stats;
  const int n = inst.size();
  if (n == 0) {
    res.trace.push_back({0, "ff", res.solution.l_max, 0, 0, 0});
    return res;
  }
  int64_t ub = res.solution.l_max;
  res.trace.push_back({0, "ff", ub, BinsForBound(inst, ub), 0, 0});
  const int64_t lb1 = Lb1(inst, matrix);
  if (opts.stop_at_lower_bound && ub <= lb1) {
    res.reached_lower_bound = true;
    return res;
  }

  Rng rng(opts.seed);
  std::vector<double> profit(n);
  auto reset_profit = [&] {
    for (int i = 0; i < n; ++i) {
      profit[i] = static_cast<double>(inst.items[i].area());
    }
  };
  int iteration = 0;
  int attempts_since = 0;
  int64_t nodes_since = 0;
  bool use_delta = opts.delta_percent.has_value();

  for (const AssignMode mode : {AssignMode::kRelaxed, AssignMode::kFull}) {
    const int a_lim =
        mode == AssignMode::kRelaxed ? opts.a_lim_relaxed : opts.a_lim_full;
    HeurOptions hopts;
    hopts.mode = mode;
    hopts.assign_budget = opts.assign_budget;
    bool step_done = false;
    while (!step_done) {
      reset_profit();
      int count = 0;
      bool improved = false;
      while (true) {
        const int64_t step = use_delta ? StepFor(ub, opts.delta_percent) : 1;
        // Heur demands L_max < target.
        const int64_t target = ub - step + 1;
        const int bins = BinsForBound(inst, target);
        const HeurResult h = Heur(inst, matrix, target, bins, profit, hopts);
        ++res.heur_calls;
        ++(mode == AssignMode::kRelaxed ? res.relaxed_calls : res.full_calls);
        ++attempts_since;
        res.assign_nodes += h.stats.assign_nodes;
        nodes_since += h.stats.assign_nodes;
        if (h.feasible) {
          res.solution = h.solution;
          ub = h.solution.l_max;
          res.trace.push_back({++iteration,
                               mode == AssignMode::kRelaxed ? "relaxed" : "full",
                               ub, BinsForBound(inst, ub), attempts_since,
                               nodes_since});
          attempts_since = 0;
          nodes_since = 0;
          improved = true;
          break;
        }
        for (int i = 0; i < n; ++i) {
          profit[i] = rng.UniformReal(1.0, 3.0) *
                      static_cast<double>(inst.items[i].area());
        }
        if (++count > a_lim) break;
      }
      if (improved) {
        if (opts.stop_at_lower_bound && ub <= lb1) {
          res.reached_lower_bound = true;
          return res;
        }
        continue;
      }
      if (use_delta) {
        use_delta = false;  // retry this step with unit improvements
        continue;
      }
      step_done = true;
    }
  }
  return res;
}

std::string ApproxTraceCsv(const std::vector<ApproxTraceRow>& trace) {
  std::ostringstream out;
  out << "iteration,mode,ub,bins,attempts,nodes\n";
  for (const ApproxTraceRow& r : trace) {
    out << r.iteration << "," << r.mode << "," << r.ub << "," << r.bins << ","
        << r.attempts << "," << r.nodes << "\n";
  }
  return out.str();
}

}  // namespace ddbpp
