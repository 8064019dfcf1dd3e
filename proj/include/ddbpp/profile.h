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

#ifndef DDBPP_PROFILE_H_
#define DDBPP_PROFILE_H_

#include <optional>
#include <string>

#include "ddbpp/ffit.h"
#include "ddbpp/model.h"
#include "ddbpp/search_budget.h"

namespace ddbpp {

// Effort and strategy settings shared by the solvers and the CLI.
struct Profile {
  std::string name = "paper";
  SearchBudget pack_budget = SearchBudget::Nodes(2000);
  SearchBudget assign_budget = SearchBudget::Nodes(20000);
  SearchBudget relax_budget = SearchBudget::Nodes(2000000);
  int a_lim_full = 100;
  int a_lim_relaxed = 100;
  std::optional<int> delta_percent;
  // First-fit bin closing and strip probing, applied to the small-item
  // categories only.
  std::optional<int> sigma;
  bool mu_strategy = false;
};

Profile PaperProfile();
Profile LargeProfile();
// nullopt for an unknown name.
std::optional<Profile> ProfileByName(const std::string& name);

// Categories whose items are small relative to the bin (2, 4, 6 and 10).
bool SmallItemCategory(int category);

// First-fit options for `inst` under `profile`; sigma and mu are only used
// when the instance records a small-item category.
FfOptions FfOptionsFor(const Profile& profile, const Instance& inst);

}  // namespace ddbpp

#endif  // DDBPP_PROFILE_H_
