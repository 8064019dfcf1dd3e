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

#ifndef DDBPP_DFF_H_
#define DDBPP_DFF_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ddbpp/model.h"
#include "ddbpp/rational.h"

namespace ddbpp {

enum class DffKind { kU1, kUeps, kPhiEps };

// One member of the three dual feasible function families. U1 ignores
// epsilon; the other two require epsilon in (0, 1/2].
struct DffDescriptor {
  DffKind kind = DffKind::kU1;
  Rational epsilon;

  static DffDescriptor U1() { return {DffKind::kU1, Rational(0)}; }
  static DffDescriptor Ueps(Rational eps);
  static DffDescriptor PhiEps(Rational eps);

  std::string Name() const;
  friend bool operator==(const DffDescriptor&, const DffDescriptor&) = default;
};

// u(x) for x in [0, 1]; throws std::domain_error outside that range.
//   U1:      x if 2x is integral, floor(2x) otherwise
//   Ueps:    1 above 1-eps, x on [eps, 1-eps], 0 below eps
//   PhiEps:  1 - floor((1-x)/eps)*eps above 1/2, 1/2 at 1/2,
//            floor(x/eps)*eps below 1/2
Rational EvalDff(const DffDescriptor& d, const Rational& x);

// Smallest positive integer S such that S * u(k / side) is integral for
// every k in 0..side.
int64_t DffScale(const DffDescriptor& d, int side);

using DffPair = std::pair<DffDescriptor, DffDescriptor>;

// One feasibility constraint: sum over the items in a bin of the transformed
// area of the chosen orientation must not exceed 1. The scaled vectors hold
// the same values multiplied by `scale`, so searches can use integer sums
// against capacity `scale`.
struct DffRow {
  DffPair gen;
  std::vector<Rational> alpha_o;
  std::vector<std::optional<Rational>> alpha_r;  // empty when not rotatable
  int64_t scale = 1;
  std::vector<int64_t> scaled_o;
  std::vector<int64_t> scaled_r;  // -1 when not rotatable

  Rational Alpha(int w, int h, int bin_w, int bin_h) const;
  // scale * Alpha(w, h); exact by construction of `scale`.
  int64_t ScaledAlpha(int w, int h, int bin_w, int bin_h) const;
  // Smaller of the two orientations (unrotated when not rotatable).
  int64_t ScaledMin(int item_index) const {
    const int64_t r = scaled_r[item_index];
    return r >= 0 && r < scaled_o[item_index] ? r : scaled_o[item_index];
  }
};

struct DffParams {
  std::vector<Rational> p = {Rational(3, 20), Rational(3, 10), Rational(9, 20)};
  std::vector<Rational> q = {Rational(3, 20), Rational(3, 10), Rational(9, 20)};
  size_t max_rows = 27;
};

struct DffMatrix {
  int bin_width = 0;
  int bin_height = 0;
  std::vector<DffRow> rows;

  int num_rows() const { return static_cast<int>(rows.size()); }
  bool empty() const { return rows.empty(); }

  // Scaled transformed area of an arbitrary w x h rectangle (e.g. a blocked
  // region) under row c.
  int64_t ScaledAlpha(int c, int w, int h) const {
    return rows[c].ScaledAlpha(w, h, bin_width, bin_height);
  }
};

// Every (u1, u2) pair over {U1, Ueps(p), PhiEps(p)} x {U1, Ueps(q), PhiEps(q)}
// for all p, q; deduplicated; ordered U1 < Ueps < PhiEps, ascending epsilon,
// u1 major.
std::vector<DffPair> EnumerateGenerators(const DffParams& params);

DffRow MakeRow(const Instance& inst, const DffPair& gen);

// Drops rows whose sum of per-item maxima is at most 1 and rows dominated
// componentwise by another row. Among identical rows the first is kept.
std::vector<DffRow> FilterRedundant(std::vector<DffRow> rows);

// Enumerate, filter, then keep at most params.max_rows rows in enumeration
// order.
DffMatrix BuildMatrix(const Instance& inst, const DffParams& params = {});

// Matrix with no rows (every feasibility constraint dropped).
DffMatrix EmptyMatrix(const Instance& inst);

// Rows as CSV: "u1,u2,alpha_o_1..n,alpha_r_1..n" with reduced fractions
// "num/den" and "NA" for absent rotated entries.
std::string DumpMatrixCsv(const DffMatrix& m);

}  // namespace ddbpp

#endif  // DDBPP_DFF_H_
