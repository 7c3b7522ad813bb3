// Copyright 2026 The netfed Authors
//
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

#include "netfed/state.h"

#include "netfed/error.h"
#include "netfed/scenario.h"

namespace netfed {

std::string_view DecisionName(Decision decision) {
  switch (decision) {
    case Decision::kAbstain:
      return "abstain";
    case Decision::kJoin:
      return "join";
    case Decision::kBuy:
      return "buy";
  }
  return "abstain";
}

void CheckProfile(const Scenario& scenario, const ParticipationProfile& k) {
  if (k.size() != scenario.num_types()) {
    throw Error(ErrorCode::kCapacity,
                "profile has " + std::to_string(k.size()) +
                    " entries but the scenario has " +
                    std::to_string(scenario.num_types()) + " types");
  }
  for (int i = 0; i < k.size(); ++i) {
    if (k[i] < 0 || k[i] > scenario.type(i).count) {
      throw Error(ErrorCode::kCapacity,
                  "K_" + std::to_string(i + 1) + " = " + std::to_string(k[i]) +
                      " outside [0, " +
                      std::to_string(scenario.type(i).count) + "]");
    }
  }
}

void CheckState(const Scenario& scenario, const SocialState& state) {
  int n = scenario.num_types();
  if (static_cast<int>(state.join.size()) != n ||
      static_cast<int>(state.buy.size()) != n) {
    throw Error(ErrorCode::kCapacity,
                "state dimension does not match the number of types");
  }
  for (int i = 0; i < n; ++i) {
    if (state.join[i] < 0 || state.buy[i] < 0 ||
        state.join[i] + state.buy[i] > scenario.type(i).count) {
      throw Error(ErrorCode::kCapacity,
                  "type " + std::to_string(i + 1) + ": K + B = " +
                      std::to_string(state.join[i] + state.buy[i]) +
                      " exceeds N = " +
                      std::to_string(scenario.type(i).count));
    }
  }
}

std::string FormatCounts(const std::vector<int>& counts) {
  std::string out;
  for (size_t i = 0; i < counts.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(counts[i]);
  }
  return out;
}

}  // namespace netfed
