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

#include "netfed/mechanism.h"

#include <cmath>

#include "netfed/error.h"
#include "netfed/performance.h"

namespace netfed {
namespace {

double UtilityOf(const Scenario& s, const std::vector<int>& k) {
  std::optional<double> eps = ErrorOfCounts(s, k);
  return eps ? s.utility()(*eps) : 0.0;
}

double AverageCost(const Scenario& s, const ParticipationProfile& k) {
  double total = 0.0;
  for (int i = 0; i < s.num_types(); ++i) total += k[i] * s.type(i).cost;
  return total / s.total_clients();
}

}  // namespace

std::string_view ThetaFormName(ThetaForm form) {
  return form == ThetaForm::kSubtractive ? "subtractive" : "interpolated";
}

double Theta(const Scenario& s, const ParticipationProfile& k,
             ThetaForm form) {
  CheckProfile(s, k);
  int types = s.num_types();
  double n = s.total_clients();
  double sign = form == ThetaForm::kSubtractive ? -1.0 : 1.0;
  double theta = 0.0;
  for (int i = 0; i < types; ++i) {
    double ni = s.type(i).count;
    double u_without = UtilityOf(s, k.With(i, 0).counts);
    double u_full = UtilityOf(s, k.With(i, s.type(i).count).counts);
    theta += (ni - k[i]) / (ni * types) * u_without +
             sign * k[i] / (ni * types) * u_full - k[i] * s.type(i).cost / n;
  }
  return theta;
}

std::string_view QuoteBranchName(QuoteBranch branch) {
  switch (branch) {
    case QuoteBranch::kLowHetThetaNegativeWelfareNonPositive:
      return "low-het/theta<0,W*<=0";
    case QuoteBranch::kLowHetThetaNegativeWelfarePositive:
      return "low-het/theta<0,W*>0";
    case QuoteBranch::kLowHetThetaNonNegative:
      return "low-het/theta>=0";
    case QuoteBranch::kHighHetUtilityBelowCostWelfarePositive:
      return "high-het/U<avg-cost,W*>0";
    case QuoteBranch::kHighHetUtilityBelowCostWelfareNonPositive:
      return "high-het/U<avg-cost,W*<=0";
    case QuoteBranch::kHighHetUtilityAtLeastCost:
      return "high-het/U>=avg-cost";
    case QuoteBranch::kModifiedFl:
      return "modified-fl";
  }
  return "modified-fl";
}

EfficientTarget TargetFromReport(const WelfareReport& report) {
  return EfficientTarget{report.optimal_welfare, Recommendation(report)};
}

MechanismQuote SemtsQuote(const Scenario& s, const ParticipationProfile& k,
                          const EfficientTarget& target, ThetaForm form) {
  CheckProfile(s, k);
  MechanismQuote q;
  q.utility = UtilityOf(s, k.counts);
  q.average_cost = AverageCost(s, k);
  q.recommendation = target.recommendation;
  const double u = q.utility;
  const double avg = q.average_cost;
  const bool positive = target.optimal_welfare > 0.0;
  q.rewards.resize(s.num_types());

  if (s.IsLowHeterogeneity()) {
    double theta = Theta(s, k, form);
    q.theta = theta;
    if (theta < 0.0) {
      q.price = u;
      q.branch = positive ? QuoteBranch::kLowHetThetaNegativeWelfarePositive
                          : QuoteBranch::kLowHetThetaNegativeWelfareNonPositive;
      for (int i = 0; i < s.num_types(); ++i) {
        q.rewards[i] = positive ? s.type(i).cost - u : s.type(i).cost - avg;
      }
    } else {
      q.price = u - theta;
      q.branch = QuoteBranch::kLowHetThetaNonNegative;
      for (int i = 0; i < s.num_types(); ++i) {
        q.rewards[i] = s.type(i).cost - u + theta;
      }
    }
    return q;
  }

  if (u < avg) {
    q.price = u;
    q.branch = positive
                   ? QuoteBranch::kHighHetUtilityBelowCostWelfarePositive
                   : QuoteBranch::kHighHetUtilityBelowCostWelfareNonPositive;
    for (int i = 0; i < s.num_types(); ++i) {
      q.rewards[i] = positive ? s.type(i).cost - u : s.type(i).cost - avg;
    }
  } else {
    q.price = avg;
    q.branch = QuoteBranch::kHighHetUtilityAtLeastCost;
    for (int i = 0; i < s.num_types(); ++i) {
      q.rewards[i] = s.type(i).cost - avg;
    }
  }
  return q;
}

MechanismQuote ModifiedFlQuote(const Scenario& s,
                               const ParticipationProfile& k) {
  CheckProfile(s, k);
  MechanismQuote q;
  q.utility = UtilityOf(s, k.counts);
  q.average_cost = AverageCost(s, k);
  q.price = q.utility;
  q.rewards.assign(s.num_types(), 0.0);
  q.branch = QuoteBranch::kModifiedFl;
  return q;
}

double ClientPayoff(const Scenario& s, const SocialState& /*state*/,
                    const MechanismQuote& quote, int type, Decision decision) {
  switch (decision) {
    case Decision::kAbstain:
      return 0.0;
    case Decision::kJoin:
      // (U - C) + r keeps the C - U reward branch at exactly zero.
      return (quote.utility - s.type(type).cost) + quote.rewards[type];
    case Decision::kBuy:
      return quote.utility - quote.price;
  }
  return 0.0;
}

double BudgetResidual(const SocialState& state, const MechanismQuote& quote) {
  double income = 0.0;
  double paid = 0.0;
  for (size_t i = 0; i < state.join.size(); ++i) {
    income += state.buy[i] * quote.price;
    paid += state.join[i] * quote.rewards[i];
  }
  return income - paid;
}

Settlement Settle(const SocialState& state, const MechanismQuote& quote) {
  Settlement out;
  out.residual = BudgetResidual(state, quote);
  out.obtainers = state.Obtainers();
  if (out.obtainers == 0) {
    if (out.residual != 0.0) {
      throw Error(ErrorCode::kUnsettleable,
                  "nonzero budget residual but no client obtained the model");
    }
    return out;
  }
  out.transfer = out.residual / out.obtainers;
  out.post_residual = out.residual - out.obtainers * out.transfer;
  return out;
}

std::vector<PayoffEntry> PayoffVector(const Scenario& s,
                                      const SocialState& state,
                                      const MechanismQuote& quote,
                                      const Settlement* settlement) {
  CheckState(s, state);
  std::vector<PayoffEntry> out;
  double transfer = settlement ? settlement->transfer : 0.0;
  for (int i = 0; i < s.num_types(); ++i) {
    int abstain = s.type(i).count - state.join[i] - state.buy[i];
    const std::pair<Decision, int> groups[] = {
        {Decision::kJoin, state.join[i]},
        {Decision::kBuy, state.buy[i]},
        {Decision::kAbstain, abstain}};
    for (const auto& [decision, clients] : groups) {
      if (clients == 0) continue;
      PayoffEntry e;
      e.type = i;
      e.decision = decision;
      e.clients = clients;
      e.pre_settlement = ClientPayoff(s, state, quote, i, decision);
      e.post_settlement = e.pre_settlement +
                          (decision == Decision::kAbstain ? 0.0 : transfer);
      out.push_back(e);
    }
  }
  return out;
}

double TotalClientPayoff(const std::vector<PayoffEntry>& payoffs,
                         bool post_settlement) {
  double total = 0.0;
  for (const PayoffEntry& e : payoffs) {
    total += e.clients * (post_settlement ? e.post_settlement
                                          : e.pre_settlement);
  }
  return total;
}

std::string_view MechanismKindName(MechanismKind kind) {
  return kind == MechanismKind::kSemts ? "semts" : "modified_fl";
}

Mechanism Mechanism::Semts(Scenario scenario, EfficientTarget target,
                           ThetaForm form) {
  CheckState(scenario, target.recommendation);
  return Mechanism(MechanismKind::kSemts, std::move(scenario),
                   std::move(target), form);
}

Mechanism Mechanism::Semts(Scenario scenario, ThetaForm form) {
  EfficientTarget target = TargetFromReport(SolveEfficientBrute(scenario));
  return Semts(std::move(scenario), std::move(target), form);
}

Mechanism Mechanism::ModifiedFl(Scenario scenario) {
  return Mechanism(MechanismKind::kModifiedFl, std::move(scenario),
                   std::nullopt, ThetaForm::kSubtractive);
}

MechanismQuote Mechanism::Quote(const ParticipationProfile& k) const {
  if (kind_ == MechanismKind::kSemts) {
    return SemtsQuote(scenario_, k, *target_, theta_form_);
  }
  return ModifiedFlQuote(scenario_, k);
}

}  // namespace netfed
