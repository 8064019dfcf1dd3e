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
#include <cmath>

#include "ddbpp/assign.h"
#include "ddbpp/dff.h"
#include "ddbpp/generator.h"
#include "doctest.h"
#include "oracles.h"

using ddbpp::AssignInput;
using ddbpp::AssignMode;
using ddbpp::AssignStatus;
using ddbpp::Instance;
using ddbpp::OverlapPattern;
using ddbpp::Region;
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

AssignInput Input(const Instance& inst, const ddbpp::DffMatrix& m,
                  std::vector<Region> regions, int bins, AssignMode mode) {
  AssignInput in;
  in.inst = &inst;
  in.matrix = &m;
  in.ub = 1000;
  in.num_bins = bins;
  for (int i = 0; i < inst.size(); ++i) {
    in.unpacked.push_back(i);
    in.profit.push_back(static_cast<double>(inst.items[i].area()));
  }
  in.regions = std::move(regions);
  in.mode = mode;
  return in;
}

}  // namespace

TEST_CASE("assign: pair classification") {
  CHECK(ddbpp::ClassifyPair({1, 0, 3, 4, 4}, {1, 2, 0, 4, 5}) ==
        OverlapPattern::kI);
  CHECK(ddbpp::ClassifyPair({1, 2, 0, 4, 5}, {1, 0, 3, 4, 4}) ==
        OverlapPattern::kNone);
  CHECK(ddbpp::ClassifyPair({1, 0, 0, 4, 4}, {1, 2, 2, 4, 4}) ==
        OverlapPattern::kII);
  CHECK(ddbpp::ClassifyPair({1, 0, 2, 4, 4}, {1, 0, 0, 4, 4}) ==
        OverlapPattern::kIII);
  CHECK(ddbpp::ClassifyPair({1, 0, 0, 4, 4}, {1, 2, 0, 4, 4}) ==
        OverlapPattern::kIV);
  // Disjoint, other bin, touching edges and equal anchors.
  CHECK(ddbpp::ClassifyPair({1, 0, 0, 2, 2}, {1, 5, 5, 2, 2}) ==
        OverlapPattern::kNone);
  CHECK(ddbpp::ClassifyPair({1, 0, 3, 4, 4}, {2, 2, 0, 4, 5}) ==
        OverlapPattern::kNone);
  CHECK(ddbpp::ClassifyPair({1, 0, 0, 2, 2}, {1, 2, 0, 2, 2}) ==
        OverlapPattern::kNone);
  CHECK(ddbpp::ClassifyPair({1, 1, 1, 2, 3}, {1, 1, 1, 3, 2}) ==
        OverlapPattern::kNone);
  CHECK(ddbpp::ClassifyPair({1, 1, 1, 3, 2}, {1, 1, 1, 2, 3}) ==
        OverlapPattern::kNone);
}

TEST_CASE("assign: overlapping pairs have exactly one classified ordering") {
  ddbpp::Rng rng(11);
  for (int t = 0; t < 5000; ++t) {
    auto rnd = [&] {
      Region r;
      r.width = static_cast<int>(rng.UniformInt(1, 6));
      r.height = static_cast<int>(rng.UniformInt(1, 6));
      r.x = static_cast<int>(rng.UniformInt(0, 6));
      r.y = static_cast<int>(rng.UniformInt(0, 6));
      return r;
    };
    const Region a = rnd();
    const Region b = rnd();
    const bool ab = ddbpp::ClassifyPair(a, b) != OverlapPattern::kNone;
    const bool ba = ddbpp::ClassifyPair(b, a) != OverlapPattern::kNone;
    const bool same_anchor = a.x == b.x && a.y == b.y;
    if (ddbpp::RegionsOverlap(a, b) && !same_anchor) {
      CHECK(ab != ba);
    } else {
      CHECK_FALSE(ab);
      CHECK_FALSE(ba);
    }
  }
}

TEST_CASE("assign: single item in a single empty bin") {
  const Instance inst = Make(10, 8, {{3, 2, 150}});
  const auto mat = ddbpp::BuildMatrix(inst);
  const auto model = ddbpp::BuildAssignModel(
      Input(inst, mat, {{1, 0, 0, 10, 8}}, 1, AssignMode::kFull));
  CHECK(model.regions.size() == 1);
  CHECK(model.cand_o[0] == std::vector<int>{0});
  CHECK(model.cand_r[0] == std::vector<int>{0});
  CHECK_FALSE(model.trivially_infeasible);
  const auto r = ddbpp::SolveAssign(model, SearchBudget::Unlimited());
  CHECK(r.status == AssignStatus::kOptimal);
  REQUIRE(r.placements.size() == 1);
  CHECK(r.placements[0].region == 0);
  CHECK(r.objective == doctest::Approx(6.0 / 80.0));
}

TEST_CASE("assign: an item with no bin meeting the bound is flagged") {
  const Instance inst = Make(10, 10, {{3, 2, 150}, {3, 3, 50}});
  const auto mat = ddbpp::BuildMatrix(inst);
  auto in = Input(inst, mat, {{1, 0, 0, 10, 10}}, 1, AssignMode::kFull);
  in.ub = 50;  // item 2 has 100 - 50 = 50, not below 50
  const auto model = ddbpp::BuildAssignModel(in);
  CHECK(model.trivially_infeasible);
  CHECK(model.cand_o[1].empty());
  CHECK(model.resv_o[1].empty());
  CHECK(ddbpp::SolveAssign(model, SearchBudget::Unlimited()).status ==
        AssignStatus::kInfeasible);
}

TEST_CASE("assign: constraint families of a pattern II pair") {
  const Instance inst = Make(10, 10, {{2, 2, 150}, {3, 3, 150}});
  const auto mat = ddbpp::BuildMatrix(inst);
  const auto model = ddbpp::BuildAssignModel(Input(
      inst, mat, {{1, 0, 0, 5, 5}, {1, 2, 3, 5, 5}}, 1, AssignMode::kFull));
  REQUIRE(model.pairs.size() == 1);
  CHECK(model.pairs[0].pattern == OverlapPattern::kII);
  const std::string dump = model.Dump();
  CHECK(dump.find("sep_x[0,1]") != std::string::npos);
  CHECK(dump.find("sep_y_above[0,1]") != std::string::npos);
  CHECK(dump.find("disjunction_above[0,1]") != std::string::npos);
  CHECK(dump.find("sep_y_below") == std::string::npos);
  CHECK(dump.find("stack_y") == std::string::npos);
  CHECK(dump.find("stack_x") == std::string::npos);
  CHECK(dump.find("disjunction_below") == std::string::npos);
  CHECK(dump.find("capacity[0]") != std::string::npos);
  CHECK(dump.find("assign[1]") != std::string::npos);
  CHECK(dump.find(" = 1\n") != std::string::npos);
}

TEST_CASE("assign: relaxed dump has no reservations or rows") {
  const Instance inst = Make(10, 10, {{2, 2, 150}, {3, 3, 150}});
  const auto mat = ddbpp::BuildMatrix(inst);
  const auto model = ddbpp::BuildAssignModel(
      Input(inst, mat, {{1, 0, 0, 5, 5}}, 1, AssignMode::kRelaxed));
  const std::string dump = model.Dump();
  CHECK(dump.find("f_o") == std::string::npos);
  CHECK(dump.find("rows[") == std::string::npos);
  CHECK(dump.find(" <= 1\n") != std::string::npos);
}

TEST_CASE("assign: second item is reserved when only one region exists") {
  const Instance inst = Make(10, 10, {{4, 4, 150}, {3, 3, 150}});
  const auto mat = ddbpp::BuildMatrix(inst);
  auto in = Input(inst, mat, {{1, 0, 0, 10, 10}}, 1, AssignMode::kFull);
  const auto model = ddbpp::BuildAssignModel(in);
  const auto r = ddbpp::SolveAssign(model, SearchBudget::Unlimited());
  CHECK(r.status == AssignStatus::kOptimal);
  REQUIRE(r.placements.size() == 1);
  CHECK(r.placements[0].item == 0);
  REQUIRE(r.reservations.size() == 1);
  CHECK(r.reservations[0].item == 1);
  CHECK(r.reservations[0].bin == 1);
}

TEST_CASE("assign: stacked regions that shut each other out are infeasible") {
  // e = (0,3) 4x3 sits above e' = (0,0) 4x6; the 4x4 item only fits e', and
  // using e caps e' at height 3. Reserving is blocked by total area 28 > 24.
  const Instance inst = Make(4, 6, {{4, 3, 150}, {4, 4, 150}});
  const auto mat = ddbpp::BuildMatrix(inst);
  const auto model = ddbpp::BuildAssignModel(Input(
      inst, mat, {{1, 0, 3, 4, 3}, {1, 0, 0, 4, 6}}, 1, AssignMode::kFull));
  REQUIRE(model.pairs.size() == 1);
  CHECK(model.pairs[0].pattern == OverlapPattern::kIII);
  CHECK_FALSE(oracle::EnumerateAssign(model).has_value());
  CHECK(ddbpp::SolveAssign(model, SearchBudget::Unlimited()).status ==
        AssignStatus::kInfeasible);
  // Relaxed: one item is simply left out.
  const auto relaxed = ddbpp::BuildAssignModel(Input(
      inst, mat, {{1, 0, 3, 4, 3}, {1, 0, 0, 4, 6}}, 1, AssignMode::kRelaxed));
  const auto rr = ddbpp::SolveAssign(relaxed, SearchBudget::Unlimited());
  CHECK(rr.status == AssignStatus::kOptimal);
  CHECK(rr.placements.size() == 1);
}

TEST_CASE("assign: same-anchor regions never both hold an item") {
  const Instance inst = Make(10, 10, {{2, 2, 150}, {2, 2, 150}});
  const auto mat = ddbpp::BuildMatrix(inst);
  const auto model = ddbpp::BuildAssignModel(Input(
      inst, mat, {{1, 0, 0, 5, 3}, {1, 0, 0, 3, 5}}, 1, AssignMode::kRelaxed));
  const auto r = ddbpp::SolveAssign(model, SearchBudget::Unlimited());
  CHECK(r.placements.size() == 1);
  CHECK(oracle::CheckAssignOutput(model, r).empty());
}

TEST_CASE("assign: optimum matches enumeration on small models") {
  ddbpp::Rng rng(2024);
  int compared = 0;
  int infeasible = 0;
  for (int t = 0; t < 3000 && compared < 600; ++t) {
    const AssignMode mode =
        t % 2 == 0 ? AssignMode::kFull : AssignMode::kRelaxed;
    oracle::AssignCase c;
    oracle::RandomAssignCase(rng, mode, c);
    const auto model = ddbpp::BuildAssignModel(c.input);
    if (oracle::AssignDecisionCount(model) > 12) continue;
    ++compared;
    const auto expect = oracle::EnumerateAssign(model);
    const auto r = ddbpp::SolveAssign(model, SearchBudget::Unlimited());
    if (!expect) {
      ++infeasible;
      CHECK(r.status == AssignStatus::kInfeasible);
      continue;
    }
    REQUIRE(r.status == AssignStatus::kOptimal);
    CHECK(r.objective == doctest::Approx(*expect).epsilon(1e-9));
    CHECK(oracle::CheckAssignOutput(model, r) == "");
  }
  CHECK(compared >= 300);
  CHECK(infeasible > 0);
}

TEST_CASE("assign: outputs are non-overlapping and respect rows") {
  ddbpp::Rng rng(99);
  for (int t = 0; t < 1000; ++t) {
    const AssignMode mode =
        t % 2 == 0 ? AssignMode::kFull : AssignMode::kRelaxed;
    oracle::AssignCase c;
    oracle::RandomAssignCase(rng, mode, c);
    const auto model = ddbpp::BuildAssignModel(c.input);
    const SearchBudget budget =
        t % 3 == 0 ? SearchBudget::Nodes(5) : SearchBudget::Unlimited();
    const auto r = ddbpp::SolveAssign(model, budget);
    if (mode == AssignMode::kRelaxed) {
      REQUIRE(r.status != AssignStatus::kInfeasible);
    }
    if (r.status == AssignStatus::kInfeasible) continue;
    INFO("case " << t);
    CHECK(oracle::CheckAssignOutput(model, r) == "");
    if (r.status == AssignStatus::kIncumbent) CHECK(r.exhausted);
  }
}

TEST_CASE("assign: solve is deterministic") {
  ddbpp::Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    oracle::AssignCase c;
    oracle::RandomAssignCase(rng, AssignMode::kFull, c);
    const auto model = ddbpp::BuildAssignModel(c.input);
    const auto a = ddbpp::SolveAssign(model, SearchBudget::Nodes(50));
    const auto b = ddbpp::SolveAssign(model, SearchBudget::Nodes(50));
    CHECK(a.status == b.status);
    CHECK(a.nodes == b.nodes);
    CHECK(a.placements.size() == b.placements.size());
    CHECK(a.objective == b.objective);
  }
}
