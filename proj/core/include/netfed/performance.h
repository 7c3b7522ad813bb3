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

#ifndef NETFED_PERFORMANCE_H_
#define NETFED_PERFORMANCE_H_

#include <optional>
#include <string_view>
#include <vector>

#include "netfed/scenario.h"
#include "netfed/state.h"

namespace netfed {

// Generalization error of the model trained by coalition k:
//   eps = (d gamma2 / K^2) * sum_i K_i / D_i + ((K - 1) / K) * sigma2.
// Throws Error(kEmptyCoalition) when K = 0 and Error(kCapacity) for profiles
// outside the scenario's type capacities.
double GeneralizationError(const Scenario& scenario,
                           const ParticipationProfile& k);

// Same formula without capacity checks; nullopt for the empty coalition.
// Used on hypothetical profiles (coordinate overrides, continuous search).
std::optional<double> ErrorOfCounts(const Scenario& scenario,
                                    const std::vector<int>& counts);

// U(eps(k)), with U = 0 when nobody trains a model.
double ModelUtility(const Scenario& scenario, const ParticipationProfile& k);

// eps(k) - eps(k + e_j); positive values are beneficial network effects.
// Throws kEmptyCoalition for K = 0 and kCapacity when K_j = N_j.
double ParticipationEffect(const Scenario& scenario,
                           const ParticipationProfile& k, int j);

// eta(k) = (2K + 1) sum_i K_i / D_i / K^2 - (K + 1) sigma2 / (d gamma2 K).
// A newcomer with data size D helps (weakly) iff 1 / D <= eta.
double EtaThreshold(const Scenario& scenario, const ParticipationProfile& k);

struct MergeResult {
  bool benefits = false;         // eps_merged < max(eps_a, eps_b)
  bool condition_holds = false;  // harmonic-mean closed form
  double eps_a = 0.0;
  double eps_b = 0.0;
  double eps_merged = 0.0;
  double harmonic_a = 0.0;  // after relabelling so harmonic_a <= harmonic_b
  double harmonic_b = 0.0;
  double ratio_bound = 0.0;  // right-hand side compared against sigma2/gamma2
};

// Compares two disjoint coalitions against their union, directly and through
// the harmonic-mean condition
//   sigma2 / gamma2 < (H_b K_b + K_a (2 H_b - H_a)) / (H_a H_b (K_a + K_b) / d).
MergeResult MergeBenefit(const Scenario& scenario,
                         const ParticipationProfile& a,
                         const ParticipationProfile& b);

// Network-effect regimes of a type relative to a coalition:
//   I    1/D_j <  sigma2/(d gamma2) and 1/D_j <= eta  (helps, later hurts)
//   II   sigma2/(d gamma2) <= 1/D_j <= eta            (always helps)
//   III  eta < 1/D_j <= sigma2/(d gamma2)             (always hurts)
//   IV   1/D_j > max(sigma2/(d gamma2), eta)          (hurts, later helps)
// eta is evaluated at the supplied coalition, so the region is a snapshot.
enum class Region { kI, kII, kIII, kIV };

std::string_view RegionName(Region region);

Region ClassifyRegion(const Scenario& scenario, const ParticipationProfile& k,
                      int j);

// Smallest K_1 from which eps stops increasing in K_1 for two i.i.d. types
// (sigma2 = 0) with D1 <= D2 and K2 >= 1 type-2 participants. Negative
// values of the closed form are clamped to 0.
int TwoTypeTurningPoint(int d1, int d2, int k2);

struct TypeEffect {
  Region region = Region::kII;
  // eps(k) - eps(k + e_j); nullopt when type j is already at capacity.
  std::optional<double> delta_eps;
};

struct NetworkEffectReport {
  double eps = 0.0;
  double eta = 0.0;
  std::vector<TypeEffect> types;
};

NetworkEffectReport AnalyzeNetworkEffects(const Scenario& scenario,
                                          const ParticipationProfile& k);

}  // namespace netfed

#endif  // NETFED_PERFORMANCE_H_
