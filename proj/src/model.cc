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

#include "ddbpp/model.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace ddbpp {
namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> Tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t end = std::min(text.find('\n', pos), text.size());
    ++number;
    std::istringstream in{std::string(text.substr(pos, end - pos))};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

int64_t ToInt(const Line& line, size_t index, const char* what) {
  const std::string& tok = line.tokens.at(index);
  size_t used = 0;
  int64_t value = 0;
  try {
    value = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty()) {
    throw ParseError(line.number,
                     std::string("expected integer ") + what + ", got '" +
                         tok + "'");
  }
  return value;
}

void ExpectTokens(const Line& line, size_t count, const char* what) {
  if (line.tokens.size() != count) {
    throw ParseError(line.number, std::string("malformed ") + what +
                                      ": expected " + std::to_string(count) +
                                      " fields");
  }
}

}  // namespace

void Instance::Check() const {
  if (bin_width <= 0 || bin_height <= 0 || processing_time <= 0) {
    throw std::invalid_argument("bin dimensions and P must be positive");
  }
  if (items.empty()) throw std::invalid_argument("instance has no items");
  for (size_t i = 0; i < items.size(); ++i) {
    const Item& it = items[i];
    if (it.id != static_cast<int>(i) + 1) {
      throw std::invalid_argument("item ids must be 1..n in order");
    }
    if (it.width < 1 || it.height < 1) {
      throw std::invalid_argument("item dimensions must be positive");
    }
    if (it.width > bin_width) {
      throw std::invalid_argument("width exceeds bin");
    }
    if (it.height > bin_height) {
      throw std::invalid_argument("height exceeds bin");
    }
  }
}

Solution MakeSolution(const Instance& inst, std::vector<Placement> placements) {
  std::sort(placements.begin(), placements.end(),
            [](const Placement& a, const Placement& b) {
              return a.item_id < b.item_id;
            });
  Solution sol;
  sol.placements = std::move(placements);
  bool first = true;
  for (const Placement& p : sol.placements) {
    sol.bins_used = std::max(sol.bins_used, p.bin);
    const int64_t lateness = Lateness(inst, inst.item(p.item_id), p.bin);
    if (first || lateness > sol.l_max) sol.l_max = lateness;
    first = false;
  }
  return sol;
}

bool ValidationReport::Has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::Summary() const {
  if (ok()) return "valid";
  std::ostringstream out;
  out << violations.size() << " violation(s)";
  for (const Violation& v : violations) out << "; " << v.message;
  return out.str();
}

ValidationReport ValidateSolution(const Instance& inst, const Solution& sol) {
  ValidationReport report;
  auto add = [&report](ViolationKind kind, int a, int b, std::string msg) {
    report.violations.push_back({kind, a, b, std::move(msg)});
  };

  std::vector<int> seen(inst.size() + 1, 0);
  std::map<int, std::vector<const Placement*>> by_bin;
  bool first = true;
  for (const Placement& p : sol.placements) {
    if (p.item_id < 1 || p.item_id > inst.size()) {
      add(ViolationKind::kUnknownItem, p.item_id, 0,
          "unknown item " + std::to_string(p.item_id));
      continue;
    }
    if (++seen[p.item_id] == 2) {
      add(ViolationKind::kDuplicateItem, p.item_id, 0,
          "item " + std::to_string(p.item_id) + " placed more than once");
    }
    const Item& it = inst.item(p.item_id);
    if (p.bin < 1) {
      add(ViolationKind::kBadBin, p.item_id, 0,
          "item " + std::to_string(p.item_id) + " has bin < 1");
      continue;
    }
    if (p.rotated && !inst.Rotatable(it)) {
      add(ViolationKind::kIllegalRotation, p.item_id, 0,
          "item " + std::to_string(p.item_id) + " cannot be rotated");
    }
    const int w = EffectiveWidth(it, p.rotated);
    const int h = EffectiveHeight(it, p.rotated);
    if (p.x < 0 || p.y < 0 || p.x + w > inst.bin_width ||
        p.y + h > inst.bin_height) {
      add(ViolationKind::kContainment, p.item_id, 0,
          "item " + std::to_string(p.item_id) + " not contained in bin");
    }
    by_bin[p.bin].push_back(&p);
    report.recomputed_bins = std::max(report.recomputed_bins, p.bin);
    const int64_t lateness = Lateness(inst, it, p.bin);
    if (first || lateness > report.recomputed_l_max) {
      report.recomputed_l_max = lateness;
    }
    first = false;
  }
  for (int id = 1; id <= inst.size(); ++id) {
    if (seen[id] == 0) {
      add(ViolationKind::kMissingItem, id, 0,
          "item " + std::to_string(id) + " missing");
    }
  }
  for (const auto& [bin, list] : by_bin) {
    for (size_t a = 0; a < list.size(); ++a) {
      const Placement& p = *list[a];
      const Item& ia = inst.item(p.item_id);
      const int aw = EffectiveWidth(ia, p.rotated);
      const int ah = EffectiveHeight(ia, p.rotated);
      for (size_t b = a + 1; b < list.size(); ++b) {
        const Placement& q = *list[b];
        const Item& ib = inst.item(q.item_id);
        const int bw = EffectiveWidth(ib, q.rotated);
        const int bh = EffectiveHeight(ib, q.rotated);
        if (p.x < q.x + bw && q.x < p.x + aw && p.y < q.y + bh &&
            q.y < p.y + ah) {
          add(ViolationKind::kOverlap, p.item_id, q.item_id,
              "items " + std::to_string(p.item_id) + " and " +
                  std::to_string(q.item_id) + " overlap in bin " +
                  std::to_string(bin));
        }
      }
    }
  }
  if (!sol.placements.empty() && report.recomputed_l_max != sol.l_max) {
    add(ViolationKind::kLmaxMismatch, 0, 0,
        "stored l_max " + std::to_string(sol.l_max) + " != recomputed " +
            std::to_string(report.recomputed_l_max));
  }
  if (!sol.placements.empty() && report.recomputed_bins != sol.bins_used) {
    add(ViolationKind::kBinsMismatch, 0, 0,
        "stored bins " + std::to_string(sol.bins_used) + " != recomputed " +
            std::to_string(report.recomputed_bins));
  }
  return report;
}

Instance ParseInstance(std::string_view text) {
  const std::vector<Line> lines = Tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty instance file");
  Instance inst;
  const Line& header = lines[0];
  ExpectTokens(header, 3, "header");
  const int64_t w = ToInt(header, 0, "W");
  const int64_t h = ToInt(header, 1, "H");
  const int64_t p = ToInt(header, 2, "P");
  if (w <= 0 || h <= 0 || p <= 0) {
    throw ParseError(header.number, "non-positive dimension in header");
  }
  inst.bin_width = static_cast<int>(w);
  inst.bin_height = static_cast<int>(h);
  inst.processing_time = p;
  if (lines.size() < 2) throw ParseError(header.number + 1, "missing item count");
  ExpectTokens(lines[1], 1, "item count");
  const int64_t n = ToInt(lines[1], 0, "n");
  if (n < 1) throw ParseError(lines[1].number, "item count must be positive");
  if (static_cast<int64_t>(lines.size()) != n + 2) {
    const int at = static_cast<int64_t>(lines.size()) < n + 2
                       ? lines.back().number + 1
                       : lines[n + 2].number;
    throw ParseError(at, "expected " + std::to_string(n) + " item lines");
  }
  for (int64_t i = 0; i < n; ++i) {
    const Line& line = lines[i + 2];
    ExpectTokens(line, 3, "item line");
    Item it;
    it.id = static_cast<int>(i) + 1;
    const int64_t iw = ToInt(line, 0, "w");
    const int64_t ih = ToInt(line, 1, "h");
    it.due_date = ToInt(line, 2, "d");
    if (iw <= 0 || ih <= 0) throw ParseError(line.number, "non-positive dimension");
    if (iw > w) throw ParseError(line.number, "width exceeds bin");
    if (ih > h) throw ParseError(line.number, "height exceeds bin");
    it.width = static_cast<int>(iw);
    it.height = static_cast<int>(ih);
    inst.items.push_back(it);
  }
  return inst;
}

std::string SerializeInstance(const Instance& inst) {
  std::ostringstream out;
  out << inst.bin_width << ' ' << inst.bin_height << ' '
      << inst.processing_time << '\n'
      << inst.items.size() << '\n';
  for (const Item& it : inst.items) {
    out << it.width << ' ' << it.height << ' ' << it.due_date << '\n';
  }
  return out.str();
}

Solution ParseSolution(std::string_view text) {
  const std::vector<Line> lines = Tokenize(text);
  Solution sol;
  bool have_lmax = false;
  std::vector<Placement> placements;
  for (const Line& line : lines) {
    if (have_lmax) throw ParseError(line.number, "content after LMAX line");
    if (line.tokens[0] == "LMAX") {
      ExpectTokens(line, 2, "LMAX line");
      sol.l_max = ToInt(line, 1, "LMAX");
      have_lmax = true;
      continue;
    }
    ExpectTokens(line, 5, "placement line");
    Placement p;
    p.item_id = static_cast<int>(ToInt(line, 0, "item_id"));
    p.bin = static_cast<int>(ToInt(line, 1, "bin"));
    p.x = static_cast<int>(ToInt(line, 2, "x"));
    p.y = static_cast<int>(ToInt(line, 3, "y"));
    const int64_t rot = ToInt(line, 4, "rotated");
    if (rot != 0 && rot != 1) throw ParseError(line.number, "rotated must be 0 or 1");
    p.rotated = rot == 1;
    sol.bins_used = std::max(sol.bins_used, p.bin);
    placements.push_back(p);
  }
  if (!have_lmax) {
    throw ParseError(lines.empty() ? 1 : lines.back().number + 1,
                     "missing LMAX line");
  }
  sol.placements = std::move(placements);
  return sol;
}

std::string SerializeSolution(const Solution& sol) {
  std::ostringstream out;
  for (const Placement& p : sol.placements) {
    out << p.item_id << ' ' << p.bin << ' ' << p.x << ' ' << p.y << ' '
        << (p.rotated ? 1 : 0) << '\n';
  }
  out << "LMAX " << sol.l_max << '\n';
  return out.str();
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << text;
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

Instance ReadInstanceFile(const std::string& path) {
  return ParseInstance(ReadTextFile(path));
}

}  // namespace ddbpp
