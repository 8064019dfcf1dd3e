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

#include "ddbpp/dff.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ddbpp {
namespace {

void CheckEpsilon(const Rational& eps) {
  if (eps <= Rational(0) || eps > Rational(1, 2)) {
    throw std::domain_error("DFF epsilon must lie in (0, 1/2]");
  }
}

int KindRank(DffKind k) { return static_cast<int>(k); }

bool DescriptorLess(const DffDescriptor& a, const DffDescriptor& b) {
  if (a.kind != b.kind) return KindRank(a.kind) < KindRank(b.kind);
  return a.epsilon < b.epsilon;
}

int64_t ToScaled(const Rational& value, int64_t scale) {
  const Rational s = value * Rational(scale);
  if (!s.IsInteger()) throw std::logic_error("DFF scale is not a common denominator");
  return s.num();
}

}  // namespace

DffDescriptor DffDescriptor::Ueps(Rational eps) {
  CheckEpsilon(eps);
  return {DffKind::kUeps, eps};
}

DffDescriptor DffDescriptor::PhiEps(Rational eps) {
  CheckEpsilon(eps);
  return {DffKind::kPhiEps, eps};
}

std::string DffDescriptor::Name() const {
  switch (kind) {
    case DffKind::kU1:
      return "U1";
    case DffKind::kUeps:
      return "Ueps(" + epsilon.ToString() + ")";
    case DffKind::kPhiEps:
      return "PhiEps(" + epsilon.ToString() + ")";
  }
  return "?";
}

Rational EvalDff(const DffDescriptor& d, const Rational& x) {
  if (x < Rational(0) || x > Rational(1)) {
    throw std::domain_error("DFF argument outside [0, 1]: " + x.ToString());
  }
  const Rational half(1, 2);
  switch (d.kind) {
    case DffKind::kU1: {
      const Rational twice = x * Rational(2);
      if (twice.IsInteger()) return x;
      return Rational(twice.Floor());
    }
    case DffKind::kUeps: {
      if (x > Rational(1) - d.epsilon) return Rational(1);
      if (x < d.epsilon) return Rational(0);
      return x;
    }
    case DffKind::kPhiEps: {
      if (x > half) {
        return Rational(1) -
               Rational(((Rational(1) - x) / d.epsilon).Floor()) * d.epsilon;
      }
      if (x == half) return half;
      return Rational((x / d.epsilon).Floor()) * d.epsilon;
    }
  }
  throw std::logic_error("unknown DFF kind");
}

int64_t DffScale(const DffDescriptor& d, int side) {
  int64_t scale = Lcm(side, 2);
  if (d.kind != DffKind::kU1) scale = Lcm(scale, d.epsilon.den());
  return scale;
}

Rational DffRow::Alpha(int w, int h, int bin_w, int bin_h) const {
  return EvalDff(gen.first, Rational(w, bin_w)) *
         EvalDff(gen.second, Rational(h, bin_h));
}

int64_t DffRow::ScaledAlpha(int w, int h, int bin_w, int bin_h) const {
  return ToScaled(Alpha(w, h, bin_w, bin_h), scale);
}

std::vector<DffPair> EnumerateGenerators(const DffParams& params) {
  std::vector<DffPair> pairs;
  for (const Rational& p : params.p) {
    for (const Rational& q : params.q) {
      const DffDescriptor firsts[] = {DffDescriptor::U1(),
                                      DffDescriptor::Ueps(p),
                                      DffDescriptor::PhiEps(p)};
      const DffDescriptor seconds[] = {DffDescriptor::U1(),
                                       DffDescriptor::Ueps(q),
                                       DffDescriptor::PhiEps(q)};
      for (const auto& a : firsts) {
        for (const auto& b : seconds) {
          const DffPair pair{a, b};
          if (std::find(pairs.begin(), pairs.end(), pair) == pairs.end()) {
            pairs.push_back(pair);
          }
        }
      }
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const DffPair& a, const DffPair& b) {
                     if (!(a.first == b.first)) {
                       return DescriptorLess(a.first, b.first);
                     }
                     return DescriptorLess(a.second, b.second);
                   });
  return pairs;
}

DffRow MakeRow(const Instance& inst, const DffPair& gen) {
  DffRow row;
  row.gen = gen;
  row.scale = DffScale(gen.first, inst.bin_width) *
              DffScale(gen.second, inst.bin_height);
  const int n = inst.size();
  row.alpha_o.reserve(n);
  row.alpha_r.reserve(n);
  for (const Item& it : inst.items) {
    const Rational o = row.Alpha(it.width, it.height, inst.bin_width,
                                 inst.bin_height);
    row.alpha_o.push_back(o);
    row.scaled_o.push_back(ToScaled(o, row.scale));
    if (inst.Rotatable(it)) {
      const Rational r = row.Alpha(it.height, it.width, inst.bin_width,
                                   inst.bin_height);
      row.alpha_r.emplace_back(r);
      row.scaled_r.push_back(ToScaled(r, row.scale));
    } else {
      row.alpha_r.emplace_back(std::nullopt);
      row.scaled_r.push_back(-1);
    }
  }
  return row;
}

namespace {

// True when every coefficient of `a` is <= the matching one of `b`.
bool DominatedBy(const DffRow& a, const DffRow& b) {
  for (size_t i = 0; i < a.alpha_o.size(); ++i) {
    if (a.alpha_o[i] > b.alpha_o[i]) return false;
    if (a.alpha_r[i] && b.alpha_r[i] && *a.alpha_r[i] > *b.alpha_r[i]) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<DffRow> FilterRedundant(std::vector<DffRow> rows) {
  const size_t m = rows.size();
  std::vector<bool> drop(m, false);
  for (size_t c = 0; c < m; ++c) {
    Rational max_sum(0);
    for (size_t i = 0; i < rows[c].alpha_o.size(); ++i) {
      Rational v = rows[c].alpha_o[i];
      if (rows[c].alpha_r[i] && *rows[c].alpha_r[i] > v) v = *rows[c].alpha_r[i];
      max_sum += v;
    }
    if (max_sum <= Rational(1)) drop[c] = true;
  }
  for (size_t c = 0; c < m; ++c) {
    if (drop[c]) continue;
    for (size_t d = 0; d < m && !drop[c]; ++d) {
      if (d == c || !DominatedBy(rows[c], rows[d])) continue;
      // Strict domination removes c; equal rows keep the lower index.
      if (!DominatedBy(rows[d], rows[c]) || d < c) drop[c] = true;
    }
  }
  std::vector<DffRow> kept;
  for (size_t c = 0; c < m; ++c) {
    if (!drop[c]) kept.push_back(std::move(rows[c]));
  }
  return kept;
}

DffMatrix BuildMatrix(const Instance& inst, const DffParams& params) {
  DffMatrix m = EmptyMatrix(inst);
  std::vector<DffRow> rows;
  for (const DffPair& gen : EnumerateGenerators(params)) {
    rows.push_back(MakeRow(inst, gen));
  }
  rows = FilterRedundant(std::move(rows));
  if (rows.size() > params.max_rows) rows.resize(params.max_rows);
  m.rows = std::move(rows);
  return m;
}

DffMatrix EmptyMatrix(const Instance& inst) {
  DffMatrix m;
  m.bin_width = inst.bin_width;
  m.bin_height = inst.bin_height;
  return m;
}

std::string DumpMatrixCsv(const DffMatrix& m) {
  std::ostringstream out;
  out << "u1,u2";
  const size_t n = m.rows.empty() ? 0 : m.rows[0].alpha_o.size();
  for (size_t i = 1; i <= n; ++i) out << ",alpha_o_" << i;
  for (size_t i = 1; i <= n; ++i) out << ",alpha_r_" << i;
  out << '\n';
  for (const DffRow& row : m.rows) {
    out << row.gen.first.Name() << ',' << row.gen.second.Name();
    for (const Rational& a : row.alpha_o) out << ',' << a.ToFractionString();
    for (const auto& a : row.alpha_r) {
      out << ',' << (a ? a->ToFractionString() : std::string("NA"));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace ddbpp
