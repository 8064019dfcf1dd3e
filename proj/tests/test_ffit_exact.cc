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

#include <array>

#include "ddbpp/bounds.h"
#include "ddbpp/dff.h"
#include "ddbpp/exact.h"
#include "ddbpp/ffit.h"
#include "ddbpp/generator.h"
#include "doctest.h"
#include "oracles.h"

using ddbpp::FfOptions;
using ddbpp::Instance;
using ddbpp::SearchBudget;

namespace {

Instance Make(int w, int h, const std::vector<std::array<int64_t, 3>>& items) {
  Instance inst;
  inst.bin_width = w;
  inst.bin_height = h;
  inst.processing_time = 100;
  int id = 1;
  for (const auto& [a, b, d] : items) {
    inst.items.push_back({id++, static_cast<int>(a), static_cast<int>(b), d});
  }
  return inst;
}

ddbpp::FfResult Ff(const Instance& inst, FfOptions opts = {}) {
  return ddbpp::FirstFit(inst, ddbpp::BuildMatrix(inst), opts);
}

}  // namespace

TEST_CASE("ff: items sharing one bin all complete at P") {
  const Instance inst = Make(10, 10, {{3, 3, 150}, {4, 2, 120}, {5, 5, 400}});
  const auto r = Ff(inst);
  CHECK(r.solution.bins_used == 1);
  CHECK(r.solution.l_max == 100 - 120);
  CHECK(ddbpp::ValidateSolution(inst, r.solution).ok());
}

TEST_CASE("ff: full-bin items go out in due-date order") {
  const Instance inst =
      Make(10, 10, {{10, 10, 300}, {10, 10, 100}, {10, 10, 250}, {10, 10, 90}});
  const auto r = Ff(inst);
  CHECK(r.solution.bins_used == 4);
  // Earliest due first: 90, 100, 250, 300.
  CHECK(r.solution.l_max == std::max({100 - 90, 200 - 100, 300 - 250, 400 - 300}));
  CHECK(r.solution.l_max == oracle::OptimalLmax(inst));
  CHECK(ddbpp::ValidateSolution(inst, r.solution).ok());
}

TEST_CASE("ff: sigma = 1 closes a bin after the first failed test") {
  // Item 2 cannot join item 1; item 3 could, but sigma stops the scan.
  const Instance inst = Make(
      10, 10, {{10, 6, 100}, {10, 6, 110}, {10, 4, 120}, {10, 4, 130}});
  FfOptions opts;
  auto free = Ff(inst, opts);
  CHECK(free.solution.bins_used == 2);
  CHECK(free.solution.placements[2].bin == 1);
  opts.sigma = 1;
  auto capped = Ff(inst, opts);
  CHECK(capped.solution.bins_used == 3);
  CHECK(capped.solution.placements[0].bin == 1);
  CHECK(capped.solution.placements[2].bin == 2);
  CHECK(ddbpp::ValidateSolution(inst, capped.solution).ok());
}

TEST_CASE("ff: mu strategy skips items that cannot lie as a strip") {
  // After the 10x9 item only a 10x1 strip is free: the 4x4 item fails and
  // so does a 4x1 strip? No, the strip fits, so mu stays; the 10x2 item
  // fails and the 10x1 strip fits; nothing is skipped.
  const Instance inst = Make(10, 10, {{10, 9, 100}, {4, 4, 110}, {10, 2, 120}});
  FfOptions opts;
  opts.mu_strategy = true;
  const auto r = Ff(inst, opts);
  CHECK(r.stats.mu_skips == 0);
  // Here the bin is full after the first item: the strip probe fails for the
  // 3-long item and every later item at least 3 long is skipped.
  const Instance full = Make(10, 10, {{10, 10, 100}, {3, 3, 110}, {5, 2, 120}, {1, 1, 130}});
  const auto s = Ff(full, opts);
  CHECK(s.stats.mu_skips == 1);
  CHECK(ddbpp::ValidateSolution(full, s.solution).ok());
}

TEST_CASE("ff: outputs validate and respect the bin-count bound") {
  for (int cat = 1; cat <= 10; ++cat) {
    for (char cls : {'A', 'C'}) {
      const Instance inst =
          ddbpp::GenerateInstance({cat, cls, 20, static_cast<uint64_t>(cat * 7)});
      const auto m = ddbpp::BuildMatrix(inst);
      FfOptions opts;
      const auto r = ddbpp::FirstFit(inst, m, opts);
      const auto report = ddbpp::ValidateSolution(inst, r.solution);
      CHECK_MESSAGE(report.ok(), report.Summary());
      CHECK(r.solution.bins_used >= ddbpp::BinCountLb(inst));
      const auto again = ddbpp::FirstFit(inst, m, opts);
      CHECK(ddbpp::SerializeSolution(again.solution) ==
            ddbpp::SerializeSolution(r.solution));
      CHECK(again.stats.pack_calls == r.stats.pack_calls);
    }
  }
}

TEST_CASE("ff: no sigma never needs more bins than sigma = 1") {
  int worse = 0;
  for (int cat = 1; cat <= 10; ++cat) {
    const Instance inst =
        ddbpp::GenerateInstance({cat, 'B', 20, static_cast<uint64_t>(cat + 40)});
    const auto m = ddbpp::BuildMatrix(inst);
    FfOptions opts;
    const auto open = ddbpp::FirstFit(inst, m, opts);
    opts.sigma = 1;
    const auto capped = ddbpp::FirstFit(inst, m, opts);
    worse += open.solution.bins_used > capped.solution.bins_used;
    CHECK(ddbpp::ValidateSolution(inst, capped.solution).ok());
  }
  CHECK(worse == 0);
}

TEST_CASE("ff: a one-node budget still yields a valid solution") {
  const Instance inst = ddbpp::GenerateInstance({3, 'A', 20, 2});
  FfOptions opts;
  opts.pack_budget = SearchBudget::Nodes(1);
  const auto r = Ff(inst, opts);
  CHECK(ddbpp::ValidateSolution(inst, r.solution).ok());
  CHECK(r.stats.pack_unknown > 0);
}

TEST_CASE("exact: worked values") {
  const Instance one = Make(10, 10, {{4, 4, 50}});
  auto r = ddbpp::SolveExact(one, std::nullopt, SearchBudget::Unlimited());
  CHECK(r.status == ddbpp::ExactStatus::kOptimal);
  CHECK(r.best_ub == 50);

  const Instance two = Make(10, 10, {{10, 10, 100}, {10, 10, 200}});
  r = ddbpp::SolveExact(two, std::nullopt, SearchBudget::Unlimited());
  CHECK(r.best_ub == 0);
  REQUIRE(r.solution.has_value());
  CHECK(r.solution->placements[0].bin == 1);
  CHECK(r.solution->placements[1].bin == 2);

  const Instance three = Make(6, 6, {{6, 6, 100}, {6, 6, 200}, {2, 2, 200}});
  r = ddbpp::SolveExact(three, std::nullopt, SearchBudget::Unlimited());
  CHECK(r.best_ub == 100);
  CHECK(oracle::OptimalLmax(three) == 100);
}

TEST_CASE("exact: agrees with plain enumeration") {
  ddbpp::Rng rng(14);
  for (int t = 0; t < 100; ++t) {
    const Instance inst = oracle::RandomTiny(rng, 5, 6);
    const auto r = ddbpp::SolveExact(inst, std::nullopt, SearchBudget::Unlimited());
    REQUIRE(r.status == ddbpp::ExactStatus::kOptimal);
    REQUIRE(r.solution.has_value());
    CHECK(r.best_ub == oracle::OptimalLmax(inst));
    CHECK(ddbpp::ValidateSolution(inst, *r.solution).ok());
  }
}

TEST_CASE("exact: budget exhaustion reports a bound pair") {
  const Instance inst = ddbpp::GenerateInstance({1, 'A', 8, 3});
  const auto r = ddbpp::SolveExact(inst, std::nullopt, SearchBudget::Nodes(2));
  CHECK(r.status == ddbpp::ExactStatus::kBound);
  REQUIRE(r.best_ub.has_value());
  CHECK(r.best_lb <= *r.best_ub);
}
