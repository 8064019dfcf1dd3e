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

#include "ddbpp/generator.h"

#include <algorithm>
#include <regex>
#include <stdexcept>

#include "ddbpp/bounds.h"

namespace ddbpp {
namespace {

constexpr int64_t kProcessingTime = 100;
constexpr int64_t kMinDue = 101;

struct Range {
  int lo;
  int hi;
};

void DrawTyped(Rng& rng, int category, int w, int* iw, int* ih) {
  const int big_lo = (2 * w + 2) / 3;  // ceil(2W/3)
  const int half = w / 2;
  const Range ranges[4][2] = {
      {{big_lo, w}, {1, half}},
      {{1, half}, {big_lo, w}},
      {{w - half, w}, {w - half, w}},  // [ceil(W/2), W]
      {{1, half}, {1, half}},
  };
  const int major = category - 7;
  const int64_t u = rng.UniformInt(1, 10);
  int type = major;
  if (u > 7) {
    // Remaining three types in index order, 10% each.
    int k = static_cast<int>(u - 8);
    for (int t = 0; t < 4; ++t) {
      if (t == major) continue;
      if (k-- == 0) {
        type = t;
        break;
      }
    }
  }
  *iw = static_cast<int>(rng.UniformInt(ranges[type][0].lo, ranges[type][0].hi));
  *ih = static_cast<int>(rng.UniformInt(ranges[type][1].lo, ranges[type][1].hi));
}

int64_t DueUpper(const Instance& inst, char due_class) {
  const int lb = BinCountLb(inst);
  const int64_t upper =
      DueClassBetaFifths(due_class) * kProcessingTime * lb / 5;
  return std::max(kMinDue, upper);
}

}  // namespace

int64_t Rng::UniformInt(int64_t lo, int64_t hi) {
  if (lo > hi) throw std::invalid_argument("UniformInt: empty range");
  const uint64_t span = static_cast<uint64_t>(hi - lo);
  if (span == UINT64_MAX) return static_cast<int64_t>(Next());
  const uint64_t range = span + 1;
  const uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  uint64_t v;
  do {
    v = Next();
  } while (v >= limit);
  return lo + static_cast<int64_t>(v % range);
}

double Rng::UniformReal(double lo, double hi) {
  const double unit = static_cast<double>(Next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

int CategoryBinSide(int category) {
  static const int kSides[] = {10, 30, 40, 100, 100, 300, 100, 100, 100, 100};
  if (category < 1 || category > 10) {
    throw std::invalid_argument("category must be in 1..10");
  }
  return kSides[category - 1];
}

int DueClassBetaFifths(char due_class) {
  switch (due_class) {
    case 'A':
      return 3;
    case 'B':
      return 4;
    case 'C':
      return 5;
    default:
      throw std::invalid_argument("due class must be A, B or C");
  }
}

Instance GenerateInstance(const GeneratorSpec& spec) {
  const int side = CategoryBinSide(spec.category);
  DueClassBetaFifths(spec.due_class);
  if (spec.n < 1) throw std::invalid_argument("n must be positive");
  Rng rng(spec.seed);
  Instance inst;
  inst.bin_width = side;
  inst.bin_height = side;
  inst.processing_time = kProcessingTime;
  inst.meta = InstanceMeta{spec.category, spec.due_class, spec.seed};
  static const int kItemMax[] = {10, 10, 35, 35, 100, 100};
  for (int i = 0; i < spec.n; ++i) {
    Item it;
    it.id = i + 1;
    if (spec.category <= 6) {
      const int hi = kItemMax[spec.category - 1];
      it.width = static_cast<int>(rng.UniformInt(1, hi));
      it.height = static_cast<int>(rng.UniformInt(1, hi));
    } else {
      DrawTyped(rng, spec.category, side, &it.width, &it.height);
    }
    it.due_date = kMinDue;
    inst.items.push_back(it);
  }
  const int64_t upper = DueUpper(inst, spec.due_class);
  for (Item& it : inst.items) it.due_date = rng.UniformInt(kMinDue, upper);
  return inst;
}

Instance DuplicateItems(const Instance& inst, int tau, char due_class,
                        uint64_t seed) {
  if (tau < 1) throw std::invalid_argument("tau must be positive");
  Instance out = inst;
  const int n = inst.size();
  for (int copy = 1; copy < tau; ++copy) {
    for (int i = 0; i < n; ++i) {
      Item it = inst.items[i];
      it.id = out.size() + 1;
      out.items.push_back(it);
    }
  }
  Rng rng(seed);
  const int64_t upper = DueUpper(out, due_class);
  for (int i = n; i < out.size(); ++i) {
    out.items[i].due_date = rng.UniformInt(kMinDue, upper);
  }
  if (out.meta) out.meta->due_class = due_class;
  return out;
}

std::string InstanceFileName(const GeneratorSpec& spec) {
  return "cat" + std::to_string(spec.category) + "_cls" +
         std::string(1, spec.due_class) + "_n" + std::to_string(spec.n) +
         "_s" + std::to_string(spec.seed) + ".2bpp";
}

bool ParseInstanceFileName(const std::string& name, GeneratorSpec* spec) {
  static const std::regex kPattern(
      R"(cat(\d+)_cls([ABC])_n(\d+)_s(\d+)(?:\.2bpp)?)");
  std::smatch m;
  const std::string base = name.substr(name.find_last_of('/') + 1);
  if (!std::regex_search(base, m, kPattern)) return false;
  spec->category = std::stoi(m[1]);
  spec->due_class = m[2].str()[0];
  spec->n = std::stoi(m[3]);
  spec->seed = std::stoull(m[4]);
  return true;
}

}  // namespace ddbpp
