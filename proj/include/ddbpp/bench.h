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

#ifndef DDBPP_BENCH_H_
#define DDBPP_BENCH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddbpp/approx.h"
#include "ddbpp/dff.h"
#include "ddbpp/model.h"
#include "ddbpp/profile.h"

namespace ddbpp {

enum class Method { kFf, kApprox, kExact };

const char* ToString(Method m);
// Throws std::invalid_argument for an unknown name.
Method ParseMethod(const std::string& name);
// Comma separated list, canonical order, duplicates removed.
std::vector<Method> ParseMethodList(const std::string& list);

struct RunOptions {
  Profile profile = PaperProfile();
  uint64_t seed = 1;
  std::optional<int> delta_percent;  // overrides the profile
  int exact_max_items = 8;
  bool force_exact = false;
};

ApproxOptions ApproxOptionsFor(const RunOptions& opts, const Instance& inst);

struct MethodOutcome {
  std::string status = "ok";  // ok | skipped | error
  std::optional<Solution> solution;
  std::optional<int64_t> lmax;
  std::string exact_status;  // optimal | bound, exact only
  int64_t nodes = 0;
  int64_t pack_calls = 0;
  int64_t millis = 0;
  std::string note;
  std::vector<ApproxTraceRow> trace;
};

// Runs one method. Every emitted solution has been validated; a failed
// validation throws std::logic_error.
MethodOutcome RunMethod(const Instance& inst, const DffMatrix& matrix,
                        Method method, const RunOptions& opts);

struct BoundsOutcome {
  int64_t lb1 = 0;
  std::optional<int64_t> lb3;
  bool lb3_valid = false;
  int64_t lb3_nodes = 0;
  int64_t lb1_millis = 0;
  int64_t lb3_millis = 0;
};

BoundsOutcome ComputeBounds(const Instance& inst, const DffMatrix& matrix,
                            const Profile& profile);

struct BenchRow {
  std::string instance;  // file name
  int category = 0;
  char due_class = '-';
  int n = 0;
  uint64_t seed = 0;
  std::string method;
  std::string status = "ok";
  std::optional<int64_t> lmax;
  int bins = 0;
  std::optional<int64_t> lb1;
  std::optional<int64_t> lb3;
  bool lb3_valid = false;
  std::string exact_status;
  int64_t nodes = 0;
  int64_t pack_calls = 0;
  int64_t millis = 0;
  std::string note;
};

struct BenchOptions {
  RunOptions run;
  std::vector<Method> methods = {Method::kFf, Method::kApprox};
  int threads = 1;
  bool timing = false;  // wall-clock columns stay 0 otherwise
};

// One row per (file, method), files in name order. Per-file failures become
// rows with status "error".
std::vector<BenchRow> RunBench(const std::vector<std::string>& files,
                               const BenchOptions& opts);

// Seed for the perturbation stream of one instance.
uint64_t InstanceSeed(uint64_t seed, const std::string& instance);

inline constexpr const char* kBenchVersionLine = "# ddbpp bench v1";

// Version line, header, rows and (optionally) the aggregate block.
std::string BenchCsv(const std::vector<BenchRow>& rows, bool aggregates = true);

// Reads the rows of a bench CSV, ignoring the aggregate block. Throws
// ParseError naming the line for malformed input.
std::vector<BenchRow> ParseBenchCsv(const std::string& text);

struct GroupSummary {
  int category = 0;
  char due_class = '-';
  int n = 0;
  int instances = 0;
  // Lower-bound deviations from the best bound, in percent; NA rows skipped.
  std::optional<double> mean_gamma_lb1, median_gamma_lb1;
  std::optional<double> mean_gamma_lb3, median_gamma_lb3;
  int eta_lb1 = 0;  // instances where the bound equals the best bound
  int eta_lb3 = 0;
  int lb3_invalid = 0;
  int gamma_na = 0;  // best bound <= 0
  // Upper-bound gaps to the best bound, per heuristic method.
  std::optional<double> mean_gap_ff, median_gap_ff;
  std::optional<double> mean_gap_approx, median_gap_approx;
  int eta_ff = 0;  // heuristic value equals the best bound
  int eta_approx = 0;
  int errors = 0;
  int skipped = 0;
};

struct InstanceSummary {
  std::string instance;
  std::optional<int64_t> best_lb;
  std::optional<double> gamma_lb1;
  std::optional<double> gamma_lb3;
};

struct Report {
  std::vector<GroupSummary> groups;
  std::vector<InstanceSummary> instances;
};

Report Summarize(const std::vector<BenchRow>& rows);
std::string ReportText(const Report& report);
std::string ReportJson(const Report& report);
std::string AggregateCsv(const Report& report);

}  // namespace ddbpp

#endif  // DDBPP_BENCH_H_
