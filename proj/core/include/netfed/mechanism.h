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

#ifndef NETFED_MECHANISM_H_
#define NETFED_MECHANISM_H_

#include <optional>
#include <string_view>
#include <vector>

#include "netfed/scenario.h"
#include "netfed/state.h"
#include "netfed/welfare.h"

namespace netfed {

// How the intermediate-state steering function combines the two
// coordinate-override utilities of each type.
//
// kSubtractive:
//   theta = sum_i [ (N_i - K_i) / (N_i I) U(eps(K; K_i := 0))
//                 -  K_i       / (N_i I) U(eps(K; K_i := N_i))
//                 -  K_i C_i / N ]
// kInterpolated flips the sign of the second term, so theta is a per-axis
// linear interpolation of U and equals W_MTS / N at every all-or-none state.
enum class ThetaForm { kSubtractive, kInterpolated };

std::string_view ThetaFormName(ThetaForm form);

// Overrides use the current profile with only coordinate i replaced. U of an
// empty coalition is 0.
double Theta(const Scenario& scenario, const ParticipationProfile& k,
             ThetaForm form = ThetaForm::kSubtractive);

enum class QuoteBranch {
  kLowHetThetaNegativeWelfareNonPositive,
  kLowHetThetaNegativeWelfarePositive,
  kLowHetThetaNonNegative,
  kHighHetUtilityBelowCostWelfarePositive,
  kHighHetUtilityBelowCostWelfareNonPositive,
  kHighHetUtilityAtLeastCost,
  kModifiedFl,
};

std::string_view QuoteBranchName(QuoteBranch branch);

// What the platform needs to know about the socially efficient outcome.
struct EfficientTarget {
  double optimal_welfare = 0.0;
  SocialState recommendation;
};

EfficientTarget TargetFromReport(const WelfareReport& report);

struct MechanismQuote {
  double price = 0.0;
  std::vector<double> rewards;  // r_i, may be negative
  QuoteBranch branch = QuoteBranch::kModifiedFl;
  std::optional<double> theta;  // low-heterogeneity SEMTS only
  double utility = 0.0;         // U(eps(K)), 0 for the empty coalition
  double average_cost = 0.0;    // sum_j K_j C_j / N
  std::optional<SocialState> recommendation;
};

// Posted price and participation rewards of the socially efficient trading
// and sharing mechanism at profile k.
//
// Low heterogeneity (sigma2 <= d gamma2 / D_I):
//   p = U                          if theta <  0
//       U - theta                  if theta >= 0
//   r_i = C_i - avg_cost           if theta <  0 and W* <= 0
//         C_i - U                  if theta <  0 and W* >  0
//         C_i - U + theta          if theta >= 0
// High heterogeneity:
//   p = U                          if U <  avg_cost
//       avg_cost                   otherwise
//   r_i = C_i - U                  if U <  avg_cost and W* > 0
//         C_i - avg_cost           otherwise
MechanismQuote SemtsQuote(const Scenario& scenario,
                          const ParticipationProfile& k,
                          const EfficientTarget& target,
                          ThetaForm form = ThetaForm::kSubtractive);

// Benchmark: price equal to the model utility, no participation rewards.
MechanismQuote ModifiedFlQuote(const Scenario& scenario,
                               const ParticipationProfile& k);

// Payoff of one type-i client taking `decision` in `state` (which already
// counts that client). Abstain: 0. Join: U - C_i + r_i. Buy: U - p.
double ClientPayoff(const Scenario& scenario, const SocialState& state,
                    const MechanismQuote& quote, int type, Decision decision);

// sum_i B_i p - sum_i K_i r_i. Zero iff buyer payments exactly fund rewards.
double BudgetResidual(const SocialState& state, const MechanismQuote& quote);

struct Settlement {
  double residual = 0.0;          // before settlement
  int obtainers = 0;              // participants + buyers
  double transfer = 0.0;          // lump sum paid to each obtainer
  double post_residual = 0.0;     // residual - obtainers * transfer
};

// Hands the budget residual back in equal lump sums to every client holding
// the model. Throws Error(kUnsettleable) if the residual is non-zero and
// nobody holds the model.
Settlement Settle(const SocialState& state, const MechanismQuote& quote);

struct PayoffEntry {
  int type = 0;
  Decision decision = Decision::kAbstain;
  int clients = 0;
  double pre_settlement = 0.0;
  double post_settlement = 0.0;
};

// Per (type, decision) payoffs for every group with at least one client.
// Without a settlement, post equals pre.
std::vector<PayoffEntry> PayoffVector(const Scenario& scenario,
                                      const SocialState& state,
                                      const MechanismQuote& quote,
                                      const Settlement* settlement = nullptr);

// Sum of client payoffs over all N clients.
double TotalClientPayoff(const std::vector<PayoffEntry>& payoffs,
                         bool post_settlement);

enum class MechanismKind { kSemts, kModifiedFl };

std::string_view MechanismKindName(MechanismKind kind);

// A quoting rule that can be re-evaluated at any profile, as the best-response
// dynamics need. Holds its own copy of the scenario.
class Mechanism {
 public:
  static Mechanism Semts(Scenario scenario, EfficientTarget target,
                         ThetaForm form = ThetaForm::kSubtractive);
  // Solves for the efficient target by brute force.
  static Mechanism Semts(Scenario scenario,
                         ThetaForm form = ThetaForm::kSubtractive);
  static Mechanism ModifiedFl(Scenario scenario);

  MechanismKind kind() const { return kind_; }
  ThetaForm theta_form() const { return theta_form_; }
  const Scenario& scenario() const { return scenario_; }
  const std::optional<EfficientTarget>& target() const { return target_; }

  // SEMTS settles its residual with obtainers; benchmarks keep it outside
  // client welfare.
  bool settles() const { return kind_ == MechanismKind::kSemts; }

  MechanismQuote Quote(const ParticipationProfile& k) const;

 private:
  Mechanism(MechanismKind kind, Scenario scenario,
            std::optional<EfficientTarget> target, ThetaForm form)
      : kind_(kind),
        scenario_(std::move(scenario)),
        target_(std::move(target)),
        theta_form_(form) {}

  MechanismKind kind_;
  Scenario scenario_;
  std::optional<EfficientTarget> target_;
  ThetaForm theta_form_;
};

}  // namespace netfed

#endif  // NETFED_MECHANISM_H_
