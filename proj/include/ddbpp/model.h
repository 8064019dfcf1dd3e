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

#ifndef DDBPP_MODEL_H_
#define DDBPP_MODEL_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ddbpp {

struct Item {
  int id = 0;  // 1-based, equal to position + 1 in Instance::items
  int width = 0;
  int height = 0;
  int64_t due_date = 0;

  int64_t area() const { return static_cast<int64_t>(width) * height; }
  int max_side() const { return width > height ? width : height; }
};

// Provenance of generated instances. Not part of the file format.
struct InstanceMeta {
  int category = 0;
  char due_class = 'A';
  uint64_t seed = 0;
};

struct Instance {
  int bin_width = 0;
  int bin_height = 0;
  int64_t processing_time = 0;
  std::vector<Item> items;
  std::optional<InstanceMeta> meta;

  int size() const { return static_cast<int>(items.size()); }
  const Item& item(int id) const { return items[id - 1]; }
  int64_t bin_area() const {
    return static_cast<int64_t>(bin_width) * bin_height;
  }

  // An item may be turned by 90 degrees only if it still fits the bin.
  bool Rotatable(const Item& it) const {
    return it.height <= bin_width && it.width <= bin_height;
  }

  // Throws std::invalid_argument when an invariant is broken.
  void Check() const;
};

struct Placement {
  int item_id = 0;
  int bin = 0;  // 1-based; completion time is bin * P
  int x = 0;
  int y = 0;
  bool rotated = false;

  friend bool operator==(const Placement&, const Placement&) = default;
};

// Effective footprint of an item under a placement.
inline int EffectiveWidth(const Item& it, bool rotated) {
  return rotated ? it.height : it.width;
}
inline int EffectiveHeight(const Item& it, bool rotated) {
  return rotated ? it.width : it.height;
}

struct Solution {
  std::vector<Placement> placements;
  int bins_used = 0;
  int64_t l_max = 0;
};

// Lateness of an item packed into `bin`.
inline int64_t Lateness(const Instance& inst, const Item& it, int bin) {
  return static_cast<int64_t>(bin) * inst.processing_time - it.due_date;
}

// Sorts placements by item id and fills bins_used / l_max.
Solution MakeSolution(const Instance& inst, std::vector<Placement> placements);

enum class ViolationKind {
  kMissingItem,
  kDuplicateItem,
  kUnknownItem,
  kBadBin,
  kContainment,
  kOverlap,
  kIllegalRotation,
  kLmaxMismatch,
  kBinsMismatch,
};

struct Violation {
  ViolationKind kind;
  int item_id = 0;
  int other_id = 0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  int64_t recomputed_l_max = 0;
  int recomputed_bins = 0;

  bool ok() const { return violations.empty(); }
  bool Has(ViolationKind kind) const;
  std::string Summary() const;
};

// Re-checks a solution geometrically. Never throws for bad solutions; every
// problem becomes a report entry.
ValidationReport ValidateSolution(const Instance& inst, const Solution& sol);

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Instance file: "W H P", then "n", then n lines "w h d".
Instance ParseInstance(std::string_view text);
std::string SerializeInstance(const Instance& inst);

// Solution file: one "item_id bin x y rotated" line per item, then
// "LMAX <value>".
Solution ParseSolution(std::string_view text);
std::string SerializeSolution(const Solution& sol);

Instance ReadInstanceFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);
std::string ReadTextFile(const std::string& path);

}  // namespace ddbpp

#endif  // DDBPP_MODEL_H_
