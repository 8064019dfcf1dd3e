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

#include <set>

#include "ddbpp/dff.h"
#include "ddbpp/generator.h"
#include "doctest.h"
#include "oracles.h"

using ddbpp::DffDescriptor;
using ddbpp::DffRow;
using ddbpp::EvalDff;
using ddbpp::Instance;
using ddbpp::Rational;

namespace {

Instance BinWith(int w, int h, const std::vector<std::pair<int, int>>& dims) {
  Instance inst;
  inst.bin_width = w;
  inst.bin_height = h;
  inst.processing_time = 100;
  int id = 1;
  for (auto [a, b] : dims) inst.items.push_back({id++, a, b, 100});
  return inst;
}

std::vector<DffDescriptor> AllDescriptors() {
  std::vector<DffDescriptor> out;
  for (const auto& [u1, u2] : ddbpp::EnumerateGenerators({})) {
    for (const auto& d : {u1, u2}) {
      if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("dff: point values") {
  CHECK(EvalDff(DffDescriptor::U1(), Rational(1, 2)) == Rational(1, 2));
  CHECK(EvalDff(DffDescriptor::U1(), Rational(3, 5)) == Rational(1));
  CHECK(EvalDff(DffDescriptor::U1(), Rational(2, 5)) == Rational(0));
  const auto ueps = DffDescriptor::Ueps(Rational(3, 10));
  CHECK(EvalDff(ueps, Rational(1, 5)) == Rational(0));
  CHECK(EvalDff(ueps, Rational(1, 2)) == Rational(1, 2));
  CHECK(EvalDff(ueps, Rational(3, 4)) == Rational(1));
  const auto phi = DffDescriptor::PhiEps(Rational(3, 10));
  CHECK(EvalDff(phi, Rational(3, 5)) == Rational(7, 10));
  CHECK(EvalDff(phi, Rational(2, 5)) == Rational(3, 10));
  CHECK(EvalDff(phi, Rational(1, 2)) == Rational(1, 2));
}

TEST_CASE("dff: domain errors") {
  CHECK_THROWS_AS(EvalDff(DffDescriptor::U1(), Rational(3, 2)), std::domain_error);
  CHECK_THROWS_AS(EvalDff(DffDescriptor::U1(), Rational(-1, 2)), std::domain_error);
  CHECK_THROWS_AS(DffDescriptor::Ueps(Rational(0)), std::domain_error);
  CHECK_THROWS_AS(DffDescriptor::PhiEps(Rational(3, 5)), std::domain_error);
}

TEST_CASE("dff: every descriptor in use is dual feasible and monotone") {
  ddbpp::Rng rng(31337);
  const auto descriptors = AllDescriptors();
  CHECK(descriptors.size() == 7);
  for (const auto& d : descriptors) {
    CAPTURE(d.Name());
    CHECK(oracle::DffFuzzViolations(d, 2000, rng) == 0);
  }
}

TEST_CASE("dff: generator enumeration is deduplicated and ordered") {
  const auto gens = ddbpp::EnumerateGenerators({});
  CHECK(gens.size() == 49);
  CHECK(gens.front().first == DffDescriptor::U1());
  CHECK(gens.front().second == DffDescriptor::U1());
  std::set<std::string> names;
  for (const auto& [a, b] : gens) names.insert(a.Name() + "|" + b.Name());
  CHECK(names.size() == gens.size());
}

TEST_CASE("dff: a full-bin item has transformed area 1 in every row") {
  const Instance inst = BinWith(10, 10, {{10, 10}});
  for (const auto& gen : ddbpp::EnumerateGenerators({})) {
    CHECK(ddbpp::MakeRow(inst, gen).alpha_o[0] == Rational(1));
  }
}

TEST_CASE("dff: two half-height strips under U1 x U1") {
  const Instance inst = BinWith(10, 10, {{10, 5}, {10, 5}});
  const DffRow row =
      ddbpp::MakeRow(inst, {DffDescriptor::U1(), DffDescriptor::U1()});
  CHECK(row.alpha_o[0] == Rational(1, 2));
  CHECK(row.alpha_o[1] == Rational(1, 2));
}

TEST_CASE("dff: rotated entry absent when the turned item does not fit") {
  const Instance inst = BinWith(10, 6, {{8, 4}, {3, 5}});
  const DffRow row =
      ddbpp::MakeRow(inst, {DffDescriptor::U1(), DffDescriptor::U1()});
  CHECK_FALSE(row.alpha_r[0].has_value());
  CHECK(row.scaled_r[0] == -1);
  CHECK(row.alpha_r[1].has_value());
}

TEST_CASE("dff: scaled values equal scale times the exact values") {
  ddbpp::Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const Instance inst = oracle::RandomTiny(rng, 6, 12);
    const auto m = ddbpp::BuildMatrix(inst);
    CHECK(m.num_rows() <= 27);
    for (const DffRow& row : m.rows) {
      for (int i = 0; i < inst.size(); ++i) {
        CHECK(Rational(row.scaled_o[i]) == row.alpha_o[i] * Rational(row.scale));
        CHECK(row.alpha_o[i] <= Rational(1));
        if (row.alpha_r[i]) {
          CHECK(Rational(row.scaled_r[i]) ==
                *row.alpha_r[i] * Rational(row.scale));
        }
      }
    }
  }
}

TEST_CASE("dff: filter drops zero rows, duplicates and dominated rows") {
  const Instance inst = BinWith(10, 10, {{10, 10}, {10, 6}, {4, 4}});
  const auto gen = std::make_pair(DffDescriptor::U1(), DffDescriptor::U1());
  DffRow base = ddbpp::MakeRow(inst, gen);
  DffRow zero = base;
  for (auto& a : zero.alpha_o) a = Rational(0);
  for (auto& a : zero.alpha_r) a = Rational(0);
  DffRow lower = base;
  lower.alpha_o[1] = Rational(1, 2);
  lower.alpha_r[1] = Rational(1, 2);
  auto kept = ddbpp::FilterRedundant({zero, base, base, lower});
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].alpha_o == base.alpha_o);
}

TEST_CASE("dff: rows hold for sliced bins without rotation") {
  ddbpp::Rng rng(17);
  for (int t = 0; t < 500; ++t) {
    const int w = static_cast<int>(rng.UniformInt(2, 40));
    const int h = static_cast<int>(rng.UniformInt(2, 40));
    const auto rects = oracle::SlicedBin(rng, w, h, 10);
    std::vector<std::pair<int, int>> dims;
    for (const auto& r : rects) dims.emplace_back(r.w, r.h);
    const Instance inst = BinWith(w, h, dims);
    for (const auto& gen : ddbpp::EnumerateGenerators({})) {
      const DffRow row = ddbpp::MakeRow(inst, gen);
      Rational sum(0);
      for (const auto& a : row.alpha_o) sum += a;
      CHECK(sum <= Rational(1));
    }
  }
}

TEST_CASE("dff: filtering keeps the set of one-bin orientation choices") {
  ddbpp::Rng rng(23);
  for (int t = 0; t < 60; ++t) {
    const Instance inst = oracle::RandomTiny(rng, 12, 10);
    const int n = inst.size();
    std::vector<DffRow> all;
    for (const auto& gen : ddbpp::EnumerateGenerators({})) {
      all.push_back(ddbpp::MakeRow(inst, gen));
    }
    const auto kept = ddbpp::FilterRedundant(all);
    auto holds = [&](const std::vector<DffRow>& rows,
                     const std::vector<int>& choice) {
      for (const DffRow& row : rows) {
        Rational sum(0);
        for (int i = 0; i < n; ++i) {
          if (choice[i] == 1) sum += row.alpha_o[i];
          if (choice[i] == 2) sum += *row.alpha_r[i];
        }
        if (sum > Rational(1)) return false;
      }
      return true;
    };
    for (int s = 0; s < 200; ++s) {
      std::vector<int> choice(n);
      for (int i = 0; i < n; ++i) {
        const bool rot = inst.Rotatable(inst.items[i]);
        choice[i] = static_cast<int>(rng.UniformInt(0, rot ? 2 : 1));
      }
      CHECK(holds(all, choice) == holds(kept, choice));
    }
  }
}

TEST_CASE("dff: csv dump has one line per row with reduced fractions") {
  const Instance inst = BinWith(10, 10, {{10, 5}, {10, 6}});
  const auto m = ddbpp::BuildMatrix(inst);
  const std::string csv = ddbpp::DumpMatrixCsv(m);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == m.num_rows() + 1);
  CHECK(m.num_rows() > 0);
  CHECK(csv.rfind("u1,u2,alpha_o_1,alpha_o_2,alpha_r_1,alpha_r_2\n", 0) == 0);
  CHECK(csv.find("U1,U1,1/2,1/1,1/2,1/1\n") != std::string::npos);
  CHECK(csv.find("1/2") != std::string::npos);
}
