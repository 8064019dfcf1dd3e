// Copyright 2026 The ddbpp Authors
//
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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "ddbpp/bench.h"
#include "ddbpp/bounds.h"
#include "ddbpp/dff.h"
#include "ddbpp/exact.h"
#include "ddbpp/ffit.h"
#include "ddbpp/generator.h"
#include "ddbpp/model.h"
#include "ddbpp/opp.h"
#include "ddbpp/profile.h"
#include "oracles.h"

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int g_failures = 0;

// Solutions checked across all criteria, and how many failed validation.
int64_t g_solutions = 0;
int64_t g_invalid = 0;

void Report(bool pass, const std::string& name, const std::string& detail) {
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void Track(const ddbpp::Instance& inst, const ddbpp::Solution& sol) {
  ++g_solutions;
  const auto report = ddbpp::ValidateSolution(inst, sol);
  if (!report.ok()) {
    ++g_invalid;
    std::fprintf(stderr, "invalid solution: %s\n", report.Summary().c_str());
  }
}

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

void DffGate() {
  const auto t0 = Clock::now();
  std::vector<ddbpp::DffDescriptor> descriptors;
  for (const auto& [u1, u2] : ddbpp::EnumerateGenerators({})) {
    for (const auto& d : {u1, u2}) {
      if (std::find(descriptors.begin(), descriptors.end(), d) ==
          descriptors.end()) {
        descriptors.push_back(d);
      }
    }
  }
  ddbpp::Rng rng(1001);
  int violations = 0;
  for (const auto& d : descriptors) {
    violations += oracle::DffFuzzViolations(d, 10000, rng);
  }
  // Products of row generators over rectangles that tile part of a bin.
  const auto gens = ddbpp::EnumerateGenerators({});
  int row_violations = 0;
  for (int t = 0; t < 10000; ++t) {
    const int w = static_cast<int>(rng.UniformInt(1, 20));
    const int h = static_cast<int>(rng.UniformInt(1, 20));
    const auto rects = oracle::SlicedBin(rng, w, h, 8);
    for (const auto& [u1, u2] : gens) {
      ddbpp::Rational sum(0);
      for (const auto& r : rects) {
        sum = sum + oracle::EvalDff(u1, ddbpp::Rational(r.w, w)) *
                        oracle::EvalDff(u2, ddbpp::Rational(r.h, h));
      }
      if (sum > ddbpp::Rational(1)) ++row_violations;
    }
  }
  const double secs = SecondsSince(t0);
  Report(violations == 0 && row_violations == 0 && secs < 30.0,
         "dff-validity",
         Format("%zu descriptors x 10000 cases, %d violations; %zu row "
                "generators x 10000 tilings, %d violations; %.1fs",
                descriptors.size(), violations, gens.size(), row_violations,
                secs));
}

void OracleSandwich() {
  const auto t0 = Clock::now();
  ddbpp::Rng rng(2002);
  ddbpp::RunOptions ro;
  int violations = 0;
  int lb3_valid = 0;
  int oracle_checked = 0;
  for (int t = 0; t < 200; ++t) {
    const ddbpp::Instance inst = oracle::RandomTiny(rng, 7, 8);
    const auto matrix = ddbpp::BuildMatrix(inst);
    const auto exact =
        ddbpp::SolveExact(inst, std::nullopt, ddbpp::SearchBudget::Unlimited());
    if (exact.status != ddbpp::ExactStatus::kOptimal || !exact.solution) {
      ++violations;
      continue;
    }
    Track(inst, *exact.solution);
    const int64_t opt = exact.solution->l_max;
    if (inst.size() <= 5) {
      ++oracle_checked;
      if (oracle::OptimalLmax(inst) != opt) ++violations;
    }
    const auto b = ddbpp::ComputeBounds(inst, matrix, ro.profile);
    if (b.lb1 > opt) ++violations;
    if (b.lb3_valid) {
      ++lb3_valid;
      if (!b.lb3 || *b.lb3 > opt) ++violations;
    }
    ro.seed = 7 + static_cast<uint64_t>(t);
    const auto ff = ddbpp::RunMethod(inst, matrix, ddbpp::Method::kFf, ro);
    const auto ap = ddbpp::RunMethod(inst, matrix, ddbpp::Method::kApprox, ro);
    if (!ff.solution || !ap.solution) {
      ++violations;
      continue;
    }
    Track(inst, *ff.solution);
    Track(inst, *ap.solution);
    if (!(opt <= ap.solution->l_max && ap.solution->l_max <= ff.solution->l_max)) {
      ++violations;
    }
  }
  const double secs = SecondsSince(t0);
  Report(violations == 0 && secs < 300.0, "oracle-sandwich",
         Format("200 instances (n <= 7, sides <= 8), %d violations, lb3 valid "
                "on %d, %d optima cross-checked by enumeration; %.1fs",
                violations, lb3_valid, oracle_checked, secs));
}

void OppExactness() {
  const auto t0 = Clock::now();
  ddbpp::Rng rng(3003);
  int violations = 0;
  int definite_limited = 0;
  for (int t = 0; t < 500; ++t) {
    const int w = static_cast<int>(rng.UniformInt(1, 6));
    const int h = static_cast<int>(rng.UniformInt(1, 6));
    const int n = static_cast<int>(rng.UniformInt(1, 5));
    std::vector<ddbpp::PackItem> items;
    std::vector<oracle::Rect> rects;
    for (int i = 0; i < n; ++i) {
      const int iw = static_cast<int>(rng.UniformInt(1, w));
      const int ih = static_cast<int>(rng.UniformInt(1, h));
      items.push_back({i + 1, iw, ih, -1});
      rects.push_back({iw, ih});
    }
    const bool expected = oracle::Fits(rects, w, h);
    const auto full =
        ddbpp::Pack(items, w, h, nullptr, ddbpp::SearchBudget::Unlimited());
    if (full.status == ddbpp::Feasibility::kUnknown ||
        full.feasible() != expected) {
      ++violations;
    }
    for (int64_t limit : {10, 100}) {
      const auto r =
          ddbpp::Pack(items, w, h, nullptr, ddbpp::SearchBudget::Nodes(limit));
      if (r.status == ddbpp::Feasibility::kUnknown) continue;
      ++definite_limited;
      if (r.feasible() != expected) ++violations;
    }
  }
  const double secs = SecondsSince(t0);
  Report(violations == 0 && secs < 120.0, "opp-exactness",
         Format("500 sets, %d violations, %d definite answers under node "
                "limits 10/100; %.1fs",
                violations, definite_limited, secs));
}

std::vector<std::string> WriteInstances(const fs::path& dir,
                                        const std::vector<ddbpp::GeneratorSpec>& specs) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::vector<std::string> files;
  for (const auto& spec : specs) {
    const fs::path p = dir / ddbpp::InstanceFileName(spec);
    ddbpp::WriteTextFile(p.string(),
                         ddbpp::SerializeInstance(ddbpp::GenerateInstance(spec)));
    files.push_back(p.string());
  }
  return files;
}

// Returns the bench CSV so the determinism check can reuse it.
std::string Improvement(const std::vector<std::string>& files) {
  const auto t0 = Clock::now();
  ddbpp::BenchOptions bo;
  bo.threads = 1;
  const auto rows = ddbpp::RunBench(files, bo);
  int compared = 0, never_worse = 0, better = 0, valid = 0, lb3_above = 0,
      errors = 0;
  std::vector<std::pair<std::string, int64_t>> ff;
  for (const auto& r : rows) {
    if (r.status != "ok" || !r.lmax) {
      ++errors;
      continue;
    }
    if (r.method == "ff") {
      ff.emplace_back(r.instance, *r.lmax);
      if (r.lb3_valid) {
        ++valid;
        if (r.lb3 && r.lb1 && *r.lb3 > *r.lb1) ++lb3_above;
      }
    }
  }
  for (const auto& r : rows) {
    if (r.method != "approx" || !r.lmax) continue;
    for (const auto& [name, v] : ff) {
      if (name != r.instance) continue;
      ++compared;
      if (*r.lmax <= v) ++never_worse;
      if (*r.lmax < v) ++better;
    }
  }
  // Re-validate the emitted solutions.
  ddbpp::RunOptions ro;
  for (const auto& f : files) {
    const auto inst = ddbpp::ReadInstanceFile(f);
    const auto matrix = ddbpp::BuildMatrix(inst);
    ro.seed = ddbpp::InstanceSeed(bo.run.seed, fs::path(f).filename().string());
    const auto ffo = ddbpp::RunMethod(inst, matrix, ddbpp::Method::kFf, ro);
    if (ffo.solution) Track(inst, *ffo.solution);
  }
  const double secs = SecondsSince(t0);
  const bool a = errors == 0 && compared == 30 && never_worse == 30 &&
                 better >= 5;
  const bool b = valid >= 25 && lb3_above >= 9;
  Report(a && secs < 600.0, "improvement-upper",
         Format("approx <= ff on %d/%d, strictly better on %d (need 30 and "
                ">= 5); %.1fs",
                never_worse, compared, better, secs));
  Report(b && secs < 600.0, "improvement-lower",
         Format("lb3 valid on %d/30 (need >= 25), lb3 > lb1 on %d/30 (need "
                ">= 9)",
                valid, lb3_above));
  return ddbpp::BenchCsv(rows);
}

void Determinism(const std::vector<std::string>& files,
                 const std::string& first_csv) {
  const auto t0 = Clock::now();
  std::vector<std::string> mismatches;
  ddbpp::BenchOptions bo;
  bo.threads = 3;
  if (ddbpp::BenchCsv(ddbpp::RunBench(files, bo)) != first_csv) {
    mismatches.push_back("bench threads 1 vs 3");
  }
  std::vector<std::string> few(files.begin(), files.begin() + 4);
  bo.threads = 1;
  bo.methods = {ddbpp::Method::kFf, ddbpp::Method::kApprox};
  if (ddbpp::BenchCsv(ddbpp::RunBench(few, bo)) !=
      ddbpp::BenchCsv(ddbpp::RunBench(few, bo))) {
    mismatches.push_back("bench repeat");
  }
  const ddbpp::GeneratorSpec spec{3, 'B', 30, 99};
  if (ddbpp::SerializeInstance(ddbpp::GenerateInstance(spec)) !=
      ddbpp::SerializeInstance(ddbpp::GenerateInstance(spec))) {
    mismatches.push_back("gen repeat");
  }
  const auto inst = ddbpp::ReadInstanceFile(files.front());
  const auto matrix = ddbpp::BuildMatrix(inst);
  if (ddbpp::DumpMatrixCsv(matrix) !=
      ddbpp::DumpMatrixCsv(ddbpp::BuildMatrix(inst))) {
    mismatches.push_back("dff dump repeat");
  }
  ddbpp::RunOptions ro;
  ro.seed = 5;
  const auto s1 = ddbpp::RunMethod(inst, matrix, ddbpp::Method::kApprox, ro);
  const auto s2 = ddbpp::RunMethod(inst, matrix, ddbpp::Method::kApprox, ro);
  if (!s1.solution || !s2.solution ||
      ddbpp::SerializeSolution(*s1.solution) !=
          ddbpp::SerializeSolution(*s2.solution) ||
      ddbpp::ApproxTraceCsv(s1.trace) != ddbpp::ApproxTraceCsv(s2.trace)) {
    mismatches.push_back("solve approx repeat");
  } else {
    Track(inst, *s1.solution);
  }
  std::string detail = mismatches.empty() ? "all outputs byte-identical"
                                          : "mismatch:";
  for (const auto& m : mismatches) detail += " [" + m + "]";
  Report(mismatches.empty(), "determinism",
         detail + Format("; %.1fs", SecondsSince(t0)));
}

void LargeInstance() {
  const auto t0 = Clock::now();
  const ddbpp::Instance base = ddbpp::GenerateInstance({2, 'A', 20, 11});
  const ddbpp::Instance inst = ddbpp::DuplicateItems(base, 10, 'A', 11);
  const auto matrix = ddbpp::BuildMatrix(inst);
  const ddbpp::Profile large = ddbpp::LargeProfile();
  ddbpp::FfOptions plain;
  plain.pack_budget = large.pack_budget;
  ddbpp::FfOptions tuned = plain;
  tuned.sigma = 40;
  tuned.mu_strategy = true;
  const auto a = ddbpp::FirstFit(inst, matrix, plain);
  const auto b = ddbpp::FirstFit(inst, matrix, tuned);
  const bool ok_a = ddbpp::ValidateSolution(inst, a.solution).ok();
  const bool ok_b = ddbpp::ValidateSolution(inst, b.solution).ok();
  Track(inst, a.solution);
  Track(inst, b.solution);
  const double secs = SecondsSince(t0);
  Report(inst.size() == 200 && ok_a && ok_b &&
             b.stats.pack_calls < a.stats.pack_calls && secs < 300.0,
         "large-instance",
         Format("n=%d; pack calls %lld with sigma=40 + mu vs %lld without "
                "(L_max %lld vs %lld); both valid: %s; %.1fs",
                inst.size(), static_cast<long long>(b.stats.pack_calls),
                static_cast<long long>(a.stats.pack_calls),
                static_cast<long long>(b.solution.l_max),
                static_cast<long long>(a.solution.l_max),
                ok_a && ok_b ? "yes" : "no", secs));
}

}  // namespace

int main() {
  DffGate();
  OracleSandwich();
  OppExactness();
  std::vector<ddbpp::GeneratorSpec> specs;
  for (uint64_t s = 1; s <= 30; ++s) specs.push_back({1, 'C', 20, s});
  const auto files = WriteInstances(fs::path("acceptance_cat1_C_n20"), specs);
  const std::string csv = Improvement(files);
  Determinism(files, csv);
  LargeInstance();
  Report(g_invalid == 0 && g_solutions > 0, "geometric-soundness",
         Format("%lld solutions validated, %lld invalid",
                static_cast<long long>(g_solutions),
                static_cast<long long>(g_invalid)));
  return g_failures == 0 ? 0 : 1;
}
