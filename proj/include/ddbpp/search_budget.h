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

#ifndef DDBPP_SEARCH_BUDGET_H_
#define DDBPP_SEARCH_BUDGET_H_

#include <chrono>
#include <cstdint>
#include <optional>

namespace ddbpp {

// Effort cap for the tree searches. Node limits are the reproducible budget;
// the wall-clock cap is optional and makes results timing dependent.
struct SearchBudget {
  std::optional<int64_t> node_limit;
  std::optional<int64_t> wall_millis;

  static SearchBudget Unlimited() { return {}; }
  static SearchBudget Nodes(int64_t limit) { return {limit, std::nullopt}; }

  bool unlimited() const { return !node_limit && !wall_millis; }
};

// Tracks node consumption against a SearchBudget. The clock is only read
// every 256 nodes.
class BudgetMeter {
 public:
  explicit BudgetMeter(const SearchBudget& budget)
      : budget_(budget), start_(std::chrono::steady_clock::now()) {}

  // Counts one node. Returns false once the budget is exhausted.
  bool Tick() {
    ++nodes_;
    if (exhausted_) return false;
    if (budget_.node_limit && nodes_ > *budget_.node_limit) {
      exhausted_ = true;
    } else if (budget_.wall_millis && (nodes_ & 255) == 0 &&
               ElapsedMillis() > *budget_.wall_millis) {
      exhausted_ = true;
    }
    return !exhausted_;
  }

  bool exhausted() const { return exhausted_; }
  int64_t nodes() const { return nodes_; }

  int64_t ElapsedMillis() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  int64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace ddbpp

#endif  // DDBPP_SEARCH_BUDGET_H_
