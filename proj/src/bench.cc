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

#include "ddbpp/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "ddbpp/bounds.h"
#include "ddbpp/exact.h"
#include "ddbpp/ffit.h"
#include "ddbpp/generator.h"
#include "json.hpp"

namespace ddbpp {

const char* ToString(Method m) {
  switch (m) {
    case Method::kFf: return "ff";
    case Method::kApprox: return "approx";
    case Method::kExact: return "exact";
  }
  return "?";
}

Method ParseMethod(const std::string& name) {
  if (name == "ff") return Method::kFf;
  if (name == "approx") return Method::kApprox;
  if (name == "exact") return Method::kExact;
  throw std::invalid_argument("unknown method '" + name + "'");
}

std::vector<Method> ParseMethodList(const std::string& list) {
  std::vector<bool> seen(3, false);
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    seen[static_cast<int>(ParseMethod(tok))] = true;
  }
  std::vector<Method> out;
  for (int m = 0; m < 3; ++m) {
    if (seen[m]) out.push_back(static_cast<Method>(m));
  }
  if (out.empty()) throw std::invalid_argument("empty method list");
  return out;
}

ApproxOptions ApproxOptionsFor(const RunOptions& opts, const Instance& inst) {
  ApproxOptions a;
  a.ff = FfOptionsFor(opts.profile, inst);
  a.assign_budget = opts.profile.assign_budget;
  a.a_lim_relaxed = opts.profile.a_lim_relaxed;
  a.a_lim_full = opts.profile.a_lim_full;
  a.delta_percent =
      opts.delta_percent ? opts.delta_percent : opts.profile.delta_percent;
  a.seed = opts.seed;
  return a;
}

namespace {

using Clock = std::chrono::steady_clock;

int64_t MillisSince(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               t0)
      .count();
}

void Validate(const Instance& inst, const Solution& sol, const char* who) {
  const ValidationReport rep = ValidateSolution(inst, sol);
  if (!rep.ok()) {
    throw std::logic_error(std::string(who) +
                           " produced an invalid solution: " + rep.Summary());
  }
}

}  // namespace

MethodOutcome RunMethod(const Instance& inst, const DffMatrix& matrix,
                        Method method, const RunOptions& opts) {
  MethodOutcome out;
  const auto t0 = Clock::now();
  switch (method) {
    case Method::kFf: {
      const FfResult r =
          FirstFit(inst, matrix, FfOptionsFor(opts.profile, inst));
      Validate(inst, r.solution, "ff");
      out.solution = r.solution;
      out.nodes = r.stats.pack_nodes;
      out.pack_calls = r.stats.pack_calls;
      break;
    }
    case Method::kApprox: {
      const ApproxResult r =
          Approx(inst, matrix, ApproxOptionsFor(opts, inst));
      Validate(inst, r.solution, "approx");
      out.solution = r.solution;
      out.nodes = r.assign_nodes + r.ff_stats.pack_nodes;
      out.pack_calls = r.ff_stats.pack_calls;
      out.trace = r.trace;
      out.note = "ff=" + std::to_string(r.ff_l_max);
      break;
    }
    case Method::kExact: {
      if (inst.size() > opts.exact_max_items && !opts.force_exact) {
        out.status = "skipped";
        out.note = "n above " + std::to_string(opts.exact_max_items);
        return out;
      }
      const ExactResult r =
          SolveExact(inst, std::nullopt, SearchBudget::Unlimited());
      if (r.solution) {
        Validate(inst, *r.solution, "exact");
        out.solution = r.solution;
      }
      out.exact_status = r.status == ExactStatus::kOptimal ? "optimal" : "bound";
      out.nodes = r.nodes;
      out.pack_calls = r.pack_calls;
      break;
    }
  }
  if (out.solution) out.lmax = out.solution->l_max;
  out.millis = MillisSince(t0);
  return out;
}

BoundsOutcome ComputeBounds(const Instance& inst, const DffMatrix& matrix,
                            const Profile& profile) {
  BoundsOutcome b;
  auto t0 = Clock::now();
  b.lb1 = Lb1(inst, matrix);
  b.lb1_millis = MillisSince(t0);
  t0 = Clock::now();
  const RelaxResult r =
      Lb3(inst, matrix, std::max(inst.size(), 1), profile.relax_budget);
  b.lb3 = r.value;
  b.lb3_valid = r.valid;
  b.lb3_nodes = r.nodes;
  b.lb3_millis = MillisSince(t0);
  return b;
}

uint64_t InstanceSeed(uint64_t seed, const std::string& instance) {
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : instance) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return seed ^ h;
}

namespace {

std::string Sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

std::vector<BenchRow> RunFile(const std::string& path, const BenchOptions& o) {
  const std::string name = std::filesystem::path(path).filename().string();
  BenchRow base;
  base.instance = name;
  GeneratorSpec spec;
  if (ParseInstanceFileName(name, &spec)) {
    base.category = spec.category;
    base.due_class = spec.due_class;
    base.seed = spec.seed;
  }
  std::vector<BenchRow> rows;
  try {
    const Instance inst = ReadInstanceFile(path);
    if (inst.meta) {
      base.category = inst.meta->category;
      base.due_class = inst.meta->due_class;
      base.seed = inst.meta->seed;
    }
    base.n = inst.size();
    const DffMatrix matrix = BuildMatrix(inst);
    const BoundsOutcome b = ComputeBounds(inst, matrix, o.run.profile);
    base.lb1 = b.lb1;
    base.lb3 = b.lb3;
    base.lb3_valid = b.lb3_valid;
    RunOptions ro = o.run;
    ro.seed = InstanceSeed(o.run.seed, name);
    for (Method m : o.methods) {
      BenchRow row = base;
      row.method = ToString(m);
      try {
        const MethodOutcome out = RunMethod(inst, matrix, m, ro);
        row.status = out.status;
        row.lmax = out.lmax;
        row.bins = out.solution ? out.solution->bins_used : 0;
        row.exact_status = out.exact_status;
        row.nodes = out.nodes;
        row.pack_calls = out.pack_calls;
        row.millis = o.timing ? out.millis : 0;
        row.note = Sanitize(out.note);
      } catch (const std::exception& e) {
        row.status = "error";
        row.note = Sanitize(e.what());
      }
      rows.push_back(row);
    }
  } catch (const std::exception& e) {
    rows.clear();
    for (Method m : o.methods) {
      BenchRow row = base;
      row.method = ToString(m);
      row.status = "error";
      row.note = Sanitize(e.what());
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace

std::vector<BenchRow> RunBench(const std::vector<std::string>& files,
                               const BenchOptions& opts) {
  std::vector<std::string> sorted = files;
  std::sort(sorted.begin(), sorted.end(),
            [](const std::string& a, const std::string& b) {
              const auto fa = std::filesystem::path(a).filename().string();
              const auto fb = std::filesystem::path(b).filename().string();
              return fa != fb ? fa < fb : a < b;
            });
  std::vector<std::vector<BenchRow>> per_file(sorted.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= sorted.size()) return;
      per_file[i] = RunFile(sorted[i], opts);
    }
  };
  const int threads = std::max(
      1, std::min<int>(opts.threads, static_cast<int>(sorted.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<BenchRow> rows;
  for (auto& v : per_file) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

namespace {

constexpr const char* kHeader =
    "instance,category,class,n,seed,method,status,lmax,bins,lb1,lb3,lb3_valid,"
    "exact_status,nodes,pack_calls,millis,note";

template <typename T>
std::string Opt(const std::optional<T>& v) {
  return v ? std::to_string(*v) : "";
}

std::string Fixed(std::optional<double> v) {
  if (!v) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  return buf;
}

}  // namespace

std::string BenchCsv(const std::vector<BenchRow>& rows, bool aggregates) {
  std::ostringstream out;
  out << kBenchVersionLine << "\n" << kHeader << "\n";
  for (const BenchRow& r : rows) {
    out << r.instance << "," << r.category << ","
        << (r.due_class == '-' ? std::string("-") : std::string(1, r.due_class))
        << "," << r.n << "," << r.seed << "," << r.method << "," << r.status
        << "," << Opt(r.lmax) << "," << r.bins << "," << Opt(r.lb1) << ","
        << Opt(r.lb3) << "," << (r.lb3_valid ? 1 : 0) << "," << r.exact_status
        << "," << r.nodes << "," << r.pack_calls << "," << r.millis << ","
        << r.note << "\n";
  }
  if (aggregates) {
    out << "# aggregates\n" << AggregateCsv(Summarize(rows));
  }
  return out.str();
}

namespace {

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

int64_t ToInt(const std::string& s, int line, const char* field) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, std::string("bad ") + field + " '" + s + "'");
  }
}

std::optional<int64_t> ToOptInt(const std::string& s, int line,
                                const char* field) {
  if (s.empty()) return std::nullopt;
  return ToInt(s, line, field);
}

}  // namespace

std::vector<BenchRow> ParseBenchCsv(const std::string& text) {
  std::vector<BenchRow> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == "# aggregates") break;
    if (line[0] == '#') {
      if (lineno == 1 && line != kBenchVersionLine) {
        throw ParseError(lineno, "unsupported bench version '" + line + "'");
      }
      continue;
    }
    if (!header) {
      if (line != kHeader) throw ParseError(lineno, "unexpected header");
      header = true;
      continue;
    }
    const std::vector<std::string> f = SplitCsv(line);
    if (f.size() != 17) {
      throw ParseError(lineno, "expected 17 fields, got " +
                                   std::to_string(f.size()));
    }
    BenchRow r;
    r.instance = f[0];
    r.category = static_cast<int>(ToInt(f[1], lineno, "category"));
    if (f[2].size() != 1) throw ParseError(lineno, "bad class '" + f[2] + "'");
    r.due_class = f[2][0];
    r.n = static_cast<int>(ToInt(f[3], lineno, "n"));
    r.seed = static_cast<uint64_t>(ToInt(f[4], lineno, "seed"));
    r.method = f[5];
    ParseMethod(r.method);
    r.status = f[6];
    if (r.status != "ok" && r.status != "error" && r.status != "skipped") {
      throw ParseError(lineno, "bad status '" + r.status + "'");
    }
    r.lmax = ToOptInt(f[7], lineno, "lmax");
    r.bins = static_cast<int>(ToInt(f[8], lineno, "bins"));
    r.lb1 = ToOptInt(f[9], lineno, "lb1");
    r.lb3 = ToOptInt(f[10], lineno, "lb3");
    const int64_t valid = ToInt(f[11], lineno, "lb3_valid");
    if (valid != 0 && valid != 1) throw ParseError(lineno, "bad lb3_valid");
    r.lb3_valid = valid == 1;
    r.exact_status = f[12];
    r.nodes = ToInt(f[13], lineno, "nodes");
    r.pack_calls = ToInt(f[14], lineno, "pack_calls");
    r.millis = ToInt(f[15], lineno, "millis");
    r.note = f[16];
    rows.push_back(r);
  }
  if (!header && lineno > 0) throw ParseError(lineno, "missing header");
  return rows;
}

namespace {

std::optional<double> Mean(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::optional<double> Median(std::vector<double> v) {
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

}  // namespace

Report Summarize(const std::vector<BenchRow>& rows) {
  // Group rows by instance, preserving first appearance.
  std::vector<std::string> order;
  std::map<std::string, std::vector<const BenchRow*>> by_inst;
  for (const BenchRow& r : rows) {
    auto [it, fresh] = by_inst.try_emplace(r.instance);
    if (fresh) order.push_back(r.instance);
    it->second.push_back(&r);
  }
  struct Acc {
    GroupSummary g;
    std::vector<double> g1, g3, gff, gap;
  };
  std::map<std::tuple<int, char, int>, Acc> groups;
  Report rep;
  for (const std::string& name : order) {
    const auto& rs = by_inst[name];
    const BenchRow& first = *rs.front();
    Acc& acc = groups[{first.category, first.due_class, first.n}];
    acc.g.category = first.category;
    acc.g.due_class = first.due_class;
    acc.g.n = first.n;
    ++acc.g.instances;
    std::optional<int64_t> lb1, lb3, exact, ff, approx;
    bool lb3_valid = false;
    for (const BenchRow* r : rs) {
      if (r->status == "error") ++acc.g.errors;
      if (r->status == "skipped") ++acc.g.skipped;
      if (r->lb1) lb1 = r->lb1;
      if (r->lb3) {
        lb3 = r->lb3;
        lb3_valid = r->lb3_valid;
      }
      if (r->status != "ok" || !r->lmax) continue;
      if (r->method == "ff") ff = r->lmax;
      if (r->method == "approx") approx = r->lmax;
      if (r->method == "exact" && r->exact_status == "optimal") exact = r->lmax;
    }
    InstanceSummary is;
    is.instance = name;
    std::optional<int64_t> best;
    auto take = [&](std::optional<int64_t> v) {
      if (v && (!best || *v > *best)) best = v;
    };
    take(lb1);
    if (lb3_valid) take(lb3);
    take(exact);
    is.best_lb = best;
    if (lb3 && !lb3_valid) ++acc.g.lb3_invalid;
    if (best) {
      const bool na = *best <= 0;
      if (na) ++acc.g.gamma_na;
      const double denom = static_cast<double>(*best);
      auto gamma = [&](int64_t lb) {
        return 100.0 * static_cast<double>(*best - lb) / denom;
      };
      if (lb1) {
        if (*lb1 == *best) ++acc.g.eta_lb1;
        if (!na) {
          is.gamma_lb1 = gamma(*lb1);
          acc.g1.push_back(*is.gamma_lb1);
        }
      }
      if (lb3 && lb3_valid) {
        if (*lb3 == *best) ++acc.g.eta_lb3;
        if (!na) {
          is.gamma_lb3 = gamma(*lb3);
          acc.g3.push_back(*is.gamma_lb3);
        }
      }
      if (ff) {
        if (*ff == *best) ++acc.g.eta_ff;
        if (!na) acc.gff.push_back(-gamma(*ff));
      }
      if (approx) {
        if (*approx == *best) ++acc.g.eta_approx;
        if (!na) acc.gap.push_back(-gamma(*approx));
      }
    }
    rep.instances.push_back(is);
  }
  for (auto& [key, acc] : groups) {
    acc.g.mean_gamma_lb1 = Mean(acc.g1);
    acc.g.median_gamma_lb1 = Median(acc.g1);
    acc.g.mean_gamma_lb3 = Mean(acc.g3);
    acc.g.median_gamma_lb3 = Median(acc.g3);
    acc.g.mean_gap_ff = Mean(acc.gff);
    acc.g.median_gap_ff = Median(acc.gff);
    acc.g.mean_gap_approx = Mean(acc.gap);
    acc.g.median_gap_approx = Median(acc.gap);
    rep.groups.push_back(acc.g);
  }
  return rep;
}

std::string AggregateCsv(const Report& report) {
  std::ostringstream out;
  out << "category,class,n,instances,mean_gamma_lb1,median_gamma_lb1,eta_lb1,"
         "mean_gamma_lb3,median_gamma_lb3,eta_lb3,lb3_invalid,gamma_na,"
         "mean_gap_ff,median_gap_ff,eta_ff,mean_gap_approx,median_gap_approx,"
         "eta_approx,errors,skipped\n";
  for (const GroupSummary& g : report.groups) {
    out << g.category << "," << g.due_class << "," << g.n << "," << g.instances
        << "," << Fixed(g.mean_gamma_lb1) << "," << Fixed(g.median_gamma_lb1)
        << "," << g.eta_lb1 << "," << Fixed(g.mean_gamma_lb3) << ","
        << Fixed(g.median_gamma_lb3) << "," << g.eta_lb3 << ","
        << g.lb3_invalid << "," << g.gamma_na << "," << Fixed(g.mean_gap_ff)
        << "," << Fixed(g.median_gap_ff) << "," << g.eta_ff << ","
        << Fixed(g.mean_gap_approx) << "," << Fixed(g.median_gap_approx) << ","
        << g.eta_approx << "," << g.errors << "," << g.skipped << "\n";
  }
  return out.str();
}

std::string ReportText(const Report& report) {
  std::ostringstream out;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-4s %-5s %5s %5s | %8s %8s %5s | %8s %8s %5s %7s | %8s %8s\n",
                "cat", "class", "n", "inst", "g1_mean", "g1_med", "eta1",
                "g3_mean", "g3_med", "eta3", "invalid", "ff_gap", "apx_gap");
  out << buf;
  for (const GroupSummary& g : report.groups) {
    std::snprintf(buf, sizeof buf,
                  "%-4d %-5c %5d %5d | %8s %8s %5d | %8s %8s %5d %7d | %8s %8s\n",
                  g.category, g.due_class, g.n, g.instances,
                  Fixed(g.mean_gamma_lb1).c_str(),
                  Fixed(g.median_gamma_lb1).c_str(), g.eta_lb1,
                  Fixed(g.mean_gamma_lb3).c_str(),
                  Fixed(g.median_gamma_lb3).c_str(), g.eta_lb3, g.lb3_invalid,
                  Fixed(g.mean_gap_ff).c_str(),
                  Fixed(g.mean_gap_approx).c_str());
    out << buf;
  }
  return out.str();
}

std::string ReportJson(const Report& report) {
  using nlohmann::ordered_json;
  auto num = [](std::optional<double> v) -> ordered_json {
    if (!v) return "NA";
    return std::round(*v * 100.0) / 100.0;
  };
  ordered_json j;
  j["groups"] = ordered_json::array();
  for (const GroupSummary& g : report.groups) {
    ordered_json o;
    o["category"] = g.category;
    o["class"] = std::string(1, g.due_class);
    o["n"] = g.n;
    o["instances"] = g.instances;
    o["mean_gamma_lb1"] = num(g.mean_gamma_lb1);
    o["median_gamma_lb1"] = num(g.median_gamma_lb1);
    o["eta_lb1"] = g.eta_lb1;
    o["mean_gamma_lb3"] = num(g.mean_gamma_lb3);
    o["median_gamma_lb3"] = num(g.median_gamma_lb3);
    o["eta_lb3"] = g.eta_lb3;
    o["lb3_invalid"] = g.lb3_invalid;
    o["gamma_na"] = g.gamma_na;
    o["mean_gap_ff"] = num(g.mean_gap_ff);
    o["median_gap_ff"] = num(g.median_gap_ff);
    o["eta_ff"] = g.eta_ff;
    o["mean_gap_approx"] = num(g.mean_gap_approx);
    o["median_gap_approx"] = num(g.median_gap_approx);
    o["eta_approx"] = g.eta_approx;
    o["errors"] = g.errors;
    o["skipped"] = g.skipped;
    j["groups"].push_back(o);
  }
  j["instances"] = ordered_json::array();
  for (const InstanceSummary& s : report.instances) {
    ordered_json o;
    o["instance"] = s.instance;
    o["best_lb"] = s.best_lb ? ordered_json(*s.best_lb) : ordered_json(nullptr);
    o["gamma_lb1"] = num(s.gamma_lb1);
    o["gamma_lb3"] = num(s.gamma_lb3);
    j["instances"].push_back(o);
  }
  return j.dump(2) + "\n";
}

}  // namespace ddbpp
