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

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "netfed/dynamics.h"
#include "netfed/welfare.h"
#include "oracles.h"

namespace netfed {
namespace {

Scenario S1() {
  return Scenario::Create(2, 1.0, 0.0, {{10, 0.5, 3}},
                          UtilityFunction::Power(1, 1));
}

Scenario S2() {
  return Scenario::Create(2, 1.0, 0.0, {{10, 2.0, 2}, {10, 20.0, 1}},
                          UtilityFunction::Power(1, 1));
}

double At(const OptionPayoffs& p, Decision d) {
  return p[static_cast<int>(d)];
}

TEST(BestResponseTest, ThreeWayTieFollowsRecommendation) {
  Mechanism mech = Mechanism::Semts(S2());
  BestResponseResult br = BestResponse(mech, SocialState::AllAbstain(2), 0,
                                       Decision::kAbstain);
  EXPECT_TRUE(br.tie);
  EXPECT_EQ(At(br.payoffs, Decision::kJoin), 0.0);
  EXPECT_EQ(At(br.payoffs, Decision::kBuy), 0.0);
  EXPECT_EQ(At(br.payoffs, Decision::kAbstain), 0.0);
  EXPECT_EQ(br.decision, Decision::kJoin);
}

TEST(BestResponseTest, RecommendationFillsJoinQuotaFirst) {
  Mechanism mech = Mechanism::Semts(S2());
  // Type 2 is recommended to buy; from all-abstain it has a three-way tie.
  BestResponseResult br = BestResponse(mech, SocialState::AllAbstain(2), 1,
                                       Decision::kAbstain);
  EXPECT_TRUE(br.tie);
  EXPECT_EQ(br.decision, Decision::kBuy);
}

TEST(BestResponseTest, ModifiedFlTieBreaksByPriority) {
  Mechanism mech = Mechanism::ModifiedFl(S2());
  BestResponseResult br =
      BestResponse(mech, SocialState{{2, 0}, {0, 0}}, 1, Decision::kAbstain);
  EXPECT_NEAR(At(br.payoffs, Decision::kJoin), -5.0, 1e-12);
  EXPECT_EQ(At(br.payoffs, Decision::kBuy), 0.0);
  EXPECT_EQ(br.decision, Decision::kBuy);
  EXPECT_TRUE(br.tie);
}

TEST(BestResponseTest, StrictDominanceIgnoresRecommendation) {
  Mechanism mech = Mechanism::ModifiedFl(S2());
  BestResponseResult br = BestResponse(mech, SocialState::AllAbstain(2), 0,
                                       Decision::kAbstain);
  EXPECT_FALSE(br.tie);
  EXPECT_EQ(br.decision, Decision::kJoin);
  EXPECT_NEAR(At(br.payoffs, Decision::kJoin), 3.0, 1e-12);
}

TEST(DynamicsTest, S2SemtsFromAllAbstain) {
  Mechanism mech = Mechanism::Semts(S2());
  DynamicsOptions o{AllAbstainDecisions(S2()), NaturalOrder(S2()), 12};
  DynamicsTrace trace = RunDynamics(mech, o);
  EXPECT_TRUE(trace.converged);
  EXPECT_EQ(trace.rounds, 2);
  EXPECT_EQ(trace.final_state, (SocialState{{2, 0}, {0, 1}}));
  EXPECT_NEAR(trace.final_welfare, 26.0, 1e-12);
  EXPECT_NEAR(trace.final_residual, 26.0, 1e-12);
  EXPECT_EQ(trace.final_post_residual, 0.0);
  ASSERT_EQ(trace.transitions.size(), 3u);
  EXPECT_EQ(trace.transitions[0].to, Decision::kJoin);
  EXPECT_EQ(trace.transitions[2].to, Decision::kBuy);
}

TEST(DynamicsTest, S2ModifiedFlFromAllAbstain) {
  Mechanism mech = Mechanism::ModifiedFl(S2());
  DynamicsOptions o{AllAbstainDecisions(S2()), NaturalOrder(S2()), 12};
  DynamicsTrace trace = RunDynamics(mech, o);
  EXPECT_TRUE(trace.converged);
  EXPECT_EQ(trace.final_state, (SocialState{{2, 0}, {0, 1}}));
  EXPECT_NEAR(trace.final_welfare, 16.0, 1e-12);
}

TEST(DynamicsTest, S1FixedPointTakesOneRound) {
  Mechanism mech = Mechanism::Semts(S1());
  DynamicsOptions o{std::vector<Decision>(3, Decision::kJoin), NaturalOrder(S1()),
                    12};
  DynamicsTrace trace = RunDynamics(mech, o);
  EXPECT_TRUE(trace.converged);
  EXPECT_EQ(trace.rounds, 1);
  EXPECT_TRUE(trace.transitions.empty());
  EXPECT_NEAR(trace.final_welfare, 43.5, 1e-12);
}

TEST(DynamicsTest, RoundLimitReportsNonConvergence) {
  Mechanism mech = Mechanism::Semts(S2());
  DynamicsOptions o{AllAbstainDecisions(S2()), NaturalOrder(S2()), 1};
  DynamicsTrace trace = RunDynamics(mech, o);
  EXPECT_FALSE(trace.converged);
  EXPECT_EQ(trace.rounds, 1);
}

TEST(DynamicsTest, TracesAreDeterministicAndMonotone) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 60; ++t) {
    Scenario s = testing::RandomScenario(rng, {});
    for (const Mechanism& mech :
         {Mechanism::Semts(s), Mechanism::ModifiedFl(s)}) {
      DynamicsOptions o{RandomDecisions(s, t), ShuffledOrder(s, t + 7),
                        s.total_clients() * (s.total_clients() + 1)};
      DynamicsTrace a = RunDynamics(mech, o);
      DynamicsTrace b = RunDynamics(mech, o);
      ASSERT_EQ(a.transitions.size(), b.transitions.size());
      for (size_t i = 0; i < a.transitions.size(); ++i) {
        const Transition& x = a.transitions[i];
        const Transition& y = b.transitions[i];
        EXPECT_EQ(x.client, y.client);
        EXPECT_EQ(x.to, y.to);
        EXPECT_EQ(x.payoffs, y.payoffs);
        double gain = At(x.payoffs, x.to) - At(x.payoffs, x.from);
        if (x.tie) {
          EXPECT_GE(gain, -1e-12 * std::max(1.0, std::abs(At(x.payoffs, x.to))));
        } else {
          EXPECT_GT(gain, 0.0);
        }
      }
      EXPECT_EQ(a.final_welfare, b.final_welfare);
      EXPECT_EQ(a.final_state, StateOf(s, a.final_decisions));
    }
  }
}

TEST(DynamicsTest, ConvergedSemtsStatesAreEquilibria) {
  std::mt19937_64 rng(42);
  int converged = 0;
  for (int t = 0; t < 60; ++t) {
    testing::MarketOptions opt;
    opt.heterogeneity = testing::MarketOptions::Heterogeneity::kLow;
    opt.require_condition = true;
    Scenario s = testing::RandomScenario(rng, opt);
    Mechanism mech = Mechanism::Semts(s);
    int n = s.total_clients();
    DynamicsOptions o{RandomDecisions(s, t), ShuffledOrder(s, t), n * (n + 1)};
    DynamicsTrace trace = RunDynamics(mech, o);
    if (!trace.converged) continue;
    ++converged;
    EXPECT_TRUE(VerifyEquilibrium(mech, trace.final_state).is_nash);
  }
  EXPECT_GT(converged, 0);
}

TEST(EquilibriumTest, S2Cases) {
  EXPECT_TRUE(VerifyEquilibrium(Mechanism::Semts(S2()),
                                SocialState{{2, 0}, {0, 1}})
                  .is_nash);
  EquilibriumCheck fl = VerifyEquilibrium(Mechanism::ModifiedFl(S2()),
                                          SocialState::AllAbstain(2));
  EXPECT_FALSE(fl.is_nash);
  bool found = false;
  for (const Deviation& d : fl.deviations) {
    if (d.type == 0 && d.to == Decision::kJoin) {
      EXPECT_NEAR(d.gain, 3.0, 1e-12);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(EquilibriumTest, AllAbstainWhenNothingPays) {
  Scenario s = Scenario::Create(2, 1.0, 0.0, {{10, 1e6, 2}},
                                UtilityFunction::Power(1, 1));
  EXPECT_TRUE(
      VerifyEquilibrium(Mechanism::ModifiedFl(s), SocialState::AllAbstain(1))
          .is_nash);
}

TEST(ClientHelpersTest, OrdersAndDecisions) {
  Scenario s = S2();
  EXPECT_EQ(ClientTypes(s), (std::vector<int>{0, 0, 1}));
  std::vector<int> order = ShuffledOrder(s, 9);
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, NaturalOrder(s));
  EXPECT_EQ(order, ShuffledOrder(s, 9));
  EXPECT_EQ(RandomDecisions(s, 5), RandomDecisions(s, 5));
  EXPECT_EQ(StateOf(s, {Decision::kJoin, Decision::kBuy, Decision::kBuy}),
            (SocialState{{1, 0}, {1, 1}}));
}

}  // namespace
}  // namespace netfed
