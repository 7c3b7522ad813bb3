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

#ifndef NETFED_DYNAMICS_H_
#define NETFED_DYNAMICS_H_

#include <array>
#include <cstdint>
#include <vector>

#include "netfed/mechanism.h"
#include "netfed/scenario.h"
#include "netfed/state.h"

namespace netfed {

// Payoff gaps at or below this (scaled by max(1, |payoff|)) count as ties.
inline constexpr double kPayoffTolerance = 1e-12;

// Payoffs are indexed by static_cast<int>(Decision).
using OptionPayoffs = std::array<double, 3>;

struct BestResponseResult {
  Decision decision = Decision::kAbstain;
  OptionPayoffs payoffs{};
  bool tie = false;  // more than one option attained the maximum
};

// Best reply of one type-i client currently playing `current` in `state`.
// Each option is priced at the state the move would produce, with the quote
// recomputed there. Ties go to the mechanism's recommended role for the
// client, then to Join > Buy > Abstain.
BestResponseResult BestResponse(const Mechanism& mechanism,
                                const SocialState& state, int type,
                                Decision current);

// Clients are numbered type by type: ids [0, N_1) are type 0, and so on.
std::vector<int> ClientTypes(const Scenario& scenario);
std::vector<Decision> AllAbstainDecisions(const Scenario& scenario);
std::vector<Decision> RandomDecisions(const Scenario& scenario,
                                      std::uint64_t seed);
std::vector<int> NaturalOrder(const Scenario& scenario);
std::vector<int> ShuffledOrder(const Scenario& scenario, std::uint64_t seed);
SocialState StateOf(const Scenario& scenario,
                    const std::vector<Decision>& decisions);

struct Transition {
  int round = 0;
  int client = 0;
  int type = 0;
  Decision from = Decision::kAbstain;
  Decision to = Decision::kAbstain;
  SocialState state;  // after the move
  OptionPayoffs payoffs{};
  bool tie = false;
};

struct DynamicsTrace {
  std::vector<Transition> transitions;
  bool converged = false;
  int rounds = 0;
  SocialState final_state;
  std::vector<Decision> final_decisions;
  // Sum of client payoffs at the final state, after settlement when the
  // mechanism settles.
  double final_welfare = 0.0;
  double final_residual = 0.0;       // before settlement
  double final_post_residual = 0.0;  // after settlement (0 if none)
};

struct DynamicsOptions {
  std::vector<Decision> initial;  // one entry per client
  std::vector<int> order;         // permutation of client ids
  int max_rounds = 1;
};

// Sequential round-robin best responses. A round is one pass over all
// clients in `order`; the run stops after a round without changes.
DynamicsTrace RunDynamics(const Mechanism& mechanism,
                          const DynamicsOptions& options);

struct Deviation {
  int type = 0;
  Decision from = Decision::kAbstain;
  Decision to = Decision::kAbstain;
  double gain = 0.0;
};

struct EquilibriumCheck {
  bool is_nash = true;
  std::vector<Deviation> deviations;  // strictly profitable ones
};

// Tries every unilateral (type, role, alternative) deviation with the quote
// recomputed at the deviated state.
EquilibriumCheck VerifyEquilibrium(const Mechanism& mechanism,
                                   const SocialState& state);

}  // namespace netfed

#endif  // NETFED_DYNAMICS_H_
