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

#include "netfed/dynamics.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "netfed/welfare.h"

namespace netfed {
namespace {

constexpr Decision kPriority[] = {Decision::kJoin, Decision::kBuy,
                                  Decision::kAbstain};

int& Slot(SocialState& st, int type, Decision d) {
  return d == Decision::kJoin ? st.join[type] : st.buy[type];
}

// State with one client of `type` moved from `from` to `to`.
SocialState Moved(const SocialState& state, int type, Decision from,
                  Decision to) {
  SocialState next = state;
  if (from != Decision::kAbstain) --Slot(next, type, from);
  if (to != Decision::kAbstain) ++Slot(next, type, to);
  return next;
}

double PayoffAt(const Mechanism& mechanism, const SocialState& state,
                int type, Decision d) {
  MechanismQuote q = mechanism.Quote(state.Participants());
  return ClientPayoff(mechanism.scenario(), state, q, type, d);
}

bool NearlyEqual(double a, double b) {
  return std::abs(a - b) <= kPayoffTolerance * std::max(1.0, std::abs(b));
}

// Role the recommendation assigns to this client given the other clients of
// its type: fill the join quota first, then the buy quota.
std::optional<Decision> RecommendedRole(const Mechanism& mechanism,
                                        const SocialState& state, int type,
                                        Decision current) {
  if (!mechanism.target()) return std::nullopt;
  const SocialState& rec = mechanism.target()->recommendation;
  int others_join = state.join[type] - (current == Decision::kJoin ? 1 : 0);
  int others_buy = state.buy[type] - (current == Decision::kBuy ? 1 : 0);
  if (others_join < rec.join[type]) return Decision::kJoin;
  if (others_buy < rec.buy[type]) return Decision::kBuy;
  return Decision::kAbstain;
}

}  // namespace

BestResponseResult BestResponse(const Mechanism& mechanism,
                                const SocialState& state, int type,
                                Decision current) {
  BestResponseResult result;
  for (Decision d : kPriority) {
    SocialState anticipated = Moved(state, type, current, d);
    result.payoffs[static_cast<int>(d)] =
        PayoffAt(mechanism, anticipated, type, d);
  }
  double best = *std::max_element(result.payoffs.begin(),
                                  result.payoffs.end());
  std::vector<Decision> maximizers;
  for (Decision d : kPriority) {
    if (NearlyEqual(result.payoffs[static_cast<int>(d)], best)) {
      maximizers.push_back(d);
    }
  }
  result.tie = maximizers.size() > 1;
  result.decision = maximizers.front();
  if (result.tie) {
    std::optional<Decision> rec =
        RecommendedRole(mechanism, state, type, current);
    if (rec && std::find(maximizers.begin(), maximizers.end(), *rec) !=
                   maximizers.end()) {
      result.decision = *rec;
    }
  }
  return result;
}

std::vector<int> ClientTypes(const Scenario& s) {
  std::vector<int> types;
  for (int i = 0; i < s.num_types(); ++i) {
    types.insert(types.end(), s.type(i).count, i);
  }
  return types;
}

std::vector<Decision> AllAbstainDecisions(const Scenario& s) {
  return std::vector<Decision>(s.total_clients(), Decision::kAbstain);
}

std::vector<Decision> RandomDecisions(const Scenario& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Decision> out(s.total_clients());
  for (Decision& d : out) d = static_cast<Decision>(rng() % 3);
  return out;
}

std::vector<int> NaturalOrder(const Scenario& s) {
  std::vector<int> order(s.total_clients());
  for (int n = 0; n < s.total_clients(); ++n) order[n] = n;
  return order;
}

std::vector<int> ShuffledOrder(const Scenario& s, std::uint64_t seed) {
  std::vector<int> order = NaturalOrder(s);
  std::mt19937_64 rng(seed);
  // Fisher-Yates with an explicit draw so the order does not depend on the
  // standard library's shuffle.
  for (int n = static_cast<int>(order.size()) - 1; n > 0; --n) {
    int m = static_cast<int>(rng() % static_cast<std::uint64_t>(n + 1));
    std::swap(order[n], order[m]);
  }
  return order;
}

SocialState StateOf(const Scenario& s, const std::vector<Decision>& decisions) {
  SocialState st = SocialState::AllAbstain(s.num_types());
  std::vector<int> types = ClientTypes(s);
  for (size_t n = 0; n < decisions.size(); ++n) {
    if (decisions[n] != Decision::kAbstain) {
      ++Slot(st, types[n], decisions[n]);
    }
  }
  return st;
}

DynamicsTrace RunDynamics(const Mechanism& mechanism,
                          const DynamicsOptions& options) {
  const Scenario& s = mechanism.scenario();
  std::vector<int> types = ClientTypes(s);
  std::vector<Decision> decisions = options.initial.empty()
                                        ? AllAbstainDecisions(s)
                                        : options.initial;
  std::vector<int> order =
      options.order.empty() ? NaturalOrder(s) : options.order;
  SocialState state = StateOf(s, decisions);

  DynamicsTrace trace;
  for (int round = 1; round <= std::max(options.max_rounds, 1); ++round) {
    bool changed = false;
    for (int client : order) {
      int type = types[client];
      Decision current = decisions[client];
      BestResponseResult br = BestResponse(mechanism, state, type, current);
      if (br.decision == current) continue;
      state = Moved(state, type, current, br.decision);
      decisions[client] = br.decision;
      changed = true;
      trace.transitions.push_back(Transition{round, client, type, current,
                                             br.decision, state, br.payoffs,
                                             br.tie});
    }
    trace.rounds = round;
    if (!changed) {
      trace.converged = true;
      break;
    }
  }

  trace.final_state = state;
  trace.final_decisions = decisions;
  MechanismQuote q = mechanism.Quote(state.Participants());
  trace.final_residual = BudgetResidual(state, q);
  if (mechanism.settles()) {
    Settlement settlement = Settle(state, q);
    trace.final_post_residual = settlement.post_residual;
    trace.final_welfare =
        TotalClientPayoff(PayoffVector(s, state, q, &settlement), true);
  } else {
    trace.final_welfare =
        TotalClientPayoff(PayoffVector(s, state, q), false);
  }
  return trace;
}

EquilibriumCheck VerifyEquilibrium(const Mechanism& mechanism,
                                   const SocialState& state) {
  const Scenario& s = mechanism.scenario();
  CheckState(s, state);
  EquilibriumCheck check;
  for (int i = 0; i < s.num_types(); ++i) {
    int abstain = s.type(i).count - state.join[i] - state.buy[i];
    const std::pair<Decision, int> roles[] = {{Decision::kJoin, state.join[i]},
                                              {Decision::kBuy, state.buy[i]},
                                              {Decision::kAbstain, abstain}};
    for (const auto& [from, clients] : roles) {
      if (clients == 0) continue;
      double stay = PayoffAt(mechanism, state, i, from);
      for (Decision to : kPriority) {
        if (to == from) continue;
        double moved = PayoffAt(mechanism, Moved(state, i, from, to), i, to);
        if (moved > stay && !NearlyEqual(moved, stay)) {
          check.deviations.push_back({i, from, to, moved - stay});
        }
      }
    }
  }
  check.is_nash = check.deviations.empty();
  return check;
}

}  // namespace netfed
