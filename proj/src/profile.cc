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

#include "ddbpp/profile.h"

namespace ddbpp {

Profile PaperProfile() { return Profile{}; }

Profile LargeProfile() {
  Profile p;
  p.name = "large";
  p.pack_budget = SearchBudget::Nodes(3000);
  p.a_lim_full = 30;
  p.a_lim_relaxed = 10;
  p.delta_percent = 2;
  p.sigma = 40;
  p.mu_strategy = true;
  return p;
}

std::optional<Profile> ProfileByName(const std::string& name) {
  if (name == "paper") return PaperProfile();
  if (name == "large") return LargeProfile();
  return std::nullopt;
}

bool SmallItemCategory(int category) {
  return category == 2 || category == 4 || category == 6 || category == 10;
}

FfOptions FfOptionsFor(const Profile& profile, const Instance& inst) {
  FfOptions o;
  o.pack_budget = profile.pack_budget;
  if (inst.meta && SmallItemCategory(inst.meta->category)) {
    o.sigma = profile.sigma;
    o.mu_strategy = profile.mu_strategy;
  }
  return o;
}

}  // namespace ddbpp
