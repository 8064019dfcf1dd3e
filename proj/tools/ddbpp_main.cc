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

// Command-line front end: gen, bounds, solve, bench, report.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ddbpp/approx.h"
#include "ddbpp/bench.h"
#include "ddbpp/bounds.h"
#include "ddbpp/dff.h"
#include "ddbpp/exact.h"
#include "ddbpp/generator.h"
#include "ddbpp/model.h"
#include "ddbpp/profile.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitInternal = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  uint64_t seed = 1;
  std::optional<int64_t> pack_nodes;
  std::optional<int64_t> assign_nodes;
  std::string profile = "paper";
  std::string out;
};

ddbpp::Profile ResolveProfile(const Globals& g) {
  auto p = ddbpp::ProfileByName(g.profile);
  if (!p) throw UsageError("unknown profile '" + g.profile + "'");
  if (g.pack_nodes) p->pack_budget = ddbpp::SearchBudget::Nodes(*g.pack_nodes);
  if (g.assign_nodes) {
    p->assign_budget = ddbpp::SearchBudget::Nodes(*g.assign_nodes);
  }
  return *p;
}

// Writes to --out when given, else stdout.
void Emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
  } else {
    ddbpp::WriteTextFile(g.out, text);
  }
}

ddbpp::Instance LoadInstance(const std::string& path) {
  return ddbpp::ReadInstanceFile(path);
}

struct GenArgs {
  int category = 1;
  std::string due_class = "A";
  int n = 20;
  int count = 1;
  int tau = 0;
  std::string from;
};

int RunGen(const Globals& g, const GenArgs& a) {
  if (a.due_class.size() != 1 || a.due_class.find_first_of("ABC") != 0) {
    throw UsageError("--class must be A, B or C");
  }
  const fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  nlohmann::ordered_json manifest;
  manifest["instances"] = nlohmann::ordered_json::array();
  if (!a.from.empty()) {
    if (a.tau < 1) throw UsageError("--tau must be at least 1");
    const ddbpp::Instance base = LoadInstance(a.from);
    const char cls = base.meta ? base.meta->due_class : a.due_class[0];
    const ddbpp::Instance dup = ddbpp::DuplicateItems(base, a.tau, cls, g.seed);
    const std::string name = fs::path(a.from).stem().string() + "_tau" +
                             std::to_string(a.tau) + ".2bpp";
    ddbpp::WriteTextFile((dir / name).string(), ddbpp::SerializeInstance(dup));
    manifest["instances"].push_back({{"file", name},
                                     {"from", fs::path(a.from).filename()},
                                     {"tau", a.tau},
                                     {"seed", g.seed},
                                     {"n", dup.size()}});
  } else {
    if (a.count < 1) throw UsageError("--count must be positive");
    for (int k = 0; k < a.count; ++k) {
      ddbpp::GeneratorSpec spec{a.category, a.due_class[0], a.n,
                                g.seed + static_cast<uint64_t>(k)};
      const ddbpp::Instance inst = ddbpp::GenerateInstance(spec);
      const std::string name = ddbpp::InstanceFileName(spec);
      ddbpp::WriteTextFile((dir / name).string(),
                           ddbpp::SerializeInstance(inst));
      manifest["instances"].push_back({{"file", name},
                                       {"category", spec.category},
                                       {"class", a.due_class},
                                       {"n", spec.n},
                                       {"seed", spec.seed}});
    }
  }
  ddbpp::WriteTextFile((dir / "manifest.json").string(),
                       manifest.dump(2) + "\n");
  return 0;
}

constexpr const char* kBoundsHeader = "instance,lb1,lb3,valid,nodes,millis";

int RunBounds(const Globals& g, const std::string& file,
              const std::string& dump_dff, bool timing) {
  const ddbpp::Profile profile = ResolveProfile(g);
  const ddbpp::Instance inst = LoadInstance(file);
  const ddbpp::DffMatrix matrix = ddbpp::BuildMatrix(inst);
  if (!dump_dff.empty()) {
    ddbpp::WriteTextFile(dump_dff, ddbpp::DumpMatrixCsv(matrix));
  }
  const auto start = std::chrono::steady_clock::now();
  const ddbpp::BoundsOutcome b = ddbpp::ComputeBounds(inst, matrix, profile);
  const int64_t millis =
      timing ? std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
                   .count()
             : 0;
  const std::string lb3 = b.lb3 ? std::to_string(*b.lb3) : "NA";
  std::cout << "LB1 " << b.lb1 << "\nLB3 " << lb3
            << " valid=" << (b.lb3_valid ? 1 : 0) << "\n";
  std::ostringstream row;
  row << fs::path(file).filename().string() << "," << b.lb1 << "," << lb3
      << "," << (b.lb3_valid ? 1 : 0) << "," << b.lb3_nodes << "," << millis
      << "\n";
  if (g.out.empty()) {
    std::cout << kBoundsHeader << "\n" << row.str();
  } else {
    const bool fresh = !fs::exists(g.out) || fs::file_size(g.out) == 0;
    std::ofstream f(g.out, std::ios::app);
    if (!f) throw IoError("cannot open " + g.out);
    if (fresh) f << kBoundsHeader << "\n";
    f << row.str();
    if (!f) throw IoError("write failed: " + g.out);
  }
  return 0;
}

struct SolveArgs {
  std::string file;
  std::string method = "approx";
  std::optional<int> delta;
  int max_n = ddbpp::kExactDefaultMaxItems;
  bool force = false;
  std::string trace;
  bool timing = false;
};

int RunSolve(const Globals& g, const SolveArgs& a) {
  ddbpp::RunOptions ro;
  ro.profile = ResolveProfile(g);
  ro.seed = g.seed;
  ro.delta_percent = a.delta;
  ro.exact_max_items = a.max_n;
  ro.force_exact = a.force;
  ddbpp::Method method;
  try {
    method = ddbpp::ParseMethod(a.method);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.delta && (*a.delta <= 0 || *a.delta >= 100)) {
    throw UsageError("--delta must lie in (0, 100)");
  }
  const ddbpp::Instance inst = LoadInstance(a.file);
  if (method == ddbpp::Method::kExact && inst.size() > a.max_n && !a.force) {
    throw UsageError("exact solver limited to n <= " +
                     std::to_string(a.max_n) + "; pass --force to override");
  }
  const ddbpp::DffMatrix matrix = ddbpp::BuildMatrix(inst);
  const ddbpp::MethodOutcome out = ddbpp::RunMethod(inst, matrix, method, ro);
  if (!a.trace.empty() && method == ddbpp::Method::kApprox) {
    ddbpp::WriteTextFile(a.trace, ddbpp::ApproxTraceCsv(out.trace));
  }
  if (!out.solution) {
    std::cerr << "no solution";
    if (!out.exact_status.empty()) std::cerr << " (" << out.exact_status << ")";
    std::cerr << "\n";
    return 0;
  }
  Emit(g, ddbpp::SerializeSolution(*out.solution));
  std::cerr << "method,bins,lmax,pack_calls,nodes,millis,status\n"
            << a.method << "," << out.solution->bins_used << ","
            << out.solution->l_max << "," << out.pack_calls << "," << out.nodes
            << "," << (a.timing ? out.millis : 0) << "," << out.exact_status
            << "\n";
  return 0;
}

int ThreadsFromEnv() {
  const char* v = std::getenv("DDP_THREADS");
  if (v == nullptr || *v == '\0') return 1;
  try {
    const int t = std::stoi(v);
    return t < 1 ? 1 : t;
  } catch (const std::exception&) {
    throw UsageError(std::string("DDP_THREADS must be an integer, got '") + v +
                     "'");
  }
}

int RunBenchCmd(const Globals& g, const std::string& dir,
                const std::string& methods, bool timing) {
  ddbpp::BenchOptions bo;
  bo.run.profile = ResolveProfile(g);
  bo.run.seed = g.seed;
  try {
    bo.methods = ddbpp::ParseMethodList(methods);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  bo.threads = ThreadsFromEnv();
  bo.timing = timing;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a directory: " + dir);
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".2bpp") {
      files.push_back(entry.path().string());
    }
  }
  const auto rows = ddbpp::RunBench(files, bo);
  Emit(g, ddbpp::BenchCsv(rows));
  return 0;
}

int RunReport(const Globals& g, const std::string& csv,
              const std::string& json_path, bool json_stdout) {
  const auto rows = ddbpp::ParseBenchCsv(ddbpp::ReadTextFile(csv));
  const ddbpp::Report rep = ddbpp::Summarize(rows);
  if (!json_path.empty()) ddbpp::WriteTextFile(json_path, ddbpp::ReportJson(rep));
  Emit(g, json_stdout ? ddbpp::ReportJson(rep) : ddbpp::ReportText(rep));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-dimensional bin packing with due dates"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--node-budget-pack", g.pack_nodes,
                 "Node limit per single-bin packing search");
  app.add_option("--node-budget-assign", g.assign_nodes,
                 "Node limit per assignment search");
  app.add_option("--profile", g.profile, "Effort profile: paper or large");
  app.add_option("--out", g.out, "Output file (directory for gen)");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate instances");
  gen_cmd->add_option("--category", gen.category, "Category 1..10")
      ->check(CLI::Range(1, 10));
  gen_cmd->add_option("--class", gen.due_class, "Due-date class A, B or C");
  gen_cmd->add_option("--n", gen.n, "Number of items")->check(CLI::Range(1, 100000));
  gen_cmd->add_option("--count", gen.count, "Number of instances");
  gen_cmd->add_option("--tau", gen.tau, "Duplicate the items of --from");
  gen_cmd->add_option("--from", gen.from, "Instance to duplicate");

  std::string bounds_file, dump_dff;
  auto* bounds_cmd = app.add_subcommand("bounds", "Compute lower bounds");
  bounds_cmd->add_option("file", bounds_file, "Instance file")->required();
  bounds_cmd->add_option("--dump-dff", dump_dff, "Write the DFF matrix as CSV");
  bool bounds_timing = false;
  bounds_cmd->add_flag("--timing", bounds_timing, "Fill the wall-clock column");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance");
  solve_cmd->add_option("file", solve.file, "Instance file")->required();
  solve_cmd->add_option("--method", solve.method, "ff, approx or exact");
  solve_cmd->add_option("--delta", solve.delta, "Minimal improvement percent");
  solve_cmd->add_option("--max-n", solve.max_n, "Exact solver item limit");
  solve_cmd->add_flag("--force", solve.force, "Run exact beyond --max-n");
  solve_cmd->add_option("--trace", solve.trace, "Write the approx trace CSV");
  solve_cmd->add_flag("--timing", solve.timing, "Fill the wall-clock column");

  std::string bench_dir, bench_methods = "ff,approx";
  bool timing = false;
  auto* bench_cmd = app.add_subcommand("bench", "Run methods over a directory");
  bench_cmd->add_option("dir", bench_dir, "Instance directory")->required();
  bench_cmd->add_option("--methods", bench_methods, "Comma separated methods");
  bench_cmd->add_flag("--timing", timing, "Fill the wall-clock column");

  std::string report_csv, report_json;
  bool json_stdout = false;
  auto* report_cmd = app.add_subcommand("report", "Summarize bench output");
  report_cmd->add_option("csv", report_csv, "Bench CSV")->required();
  report_cmd->add_option("--json", report_json, "Also write JSON here");
  report_cmd->add_flag("--format-json", json_stdout, "Print JSON instead of text");

  for (CLI::App* sub : {gen_cmd, bounds_cmd, solve_cmd, bench_cmd, report_cmd}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return RunGen(g, gen);
    if (bounds_cmd->parsed()) return RunBounds(g, bounds_file, dump_dff, bounds_timing);
    if (solve_cmd->parsed()) return RunSolve(g, solve);
    if (bench_cmd->parsed()) {
      return RunBenchCmd(g, bench_dir, bench_methods, timing);
    }
    if (report_cmd->parsed()) {
      return RunReport(g, report_csv, report_json, json_stdout);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ddbpp::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
