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

#ifndef NETFED_WELFARE_H_
#define NETFED_WELFARE_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "netfed/scenario.h"
#include "netfed/state.h"

namespace netfed {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// Social welfare under model trading and sharing: every client holding the
// model enjoys U(eps(K)); participants pay their cost. Transfers cancel under
// budget balance and are not part of this sum.
//   W = sum_i (K_i + B_i) U(eps(K)) - sum_i K_i C_i
double WelfareMts(const Scenario& scenario, const SocialState& state);

// Welfare when only participants may use the model.
double WelfareFl(const Scenario& scenario, const ParticipationProfile& k);

// Welfare of the all-or-none state (K, N - K): N U(eps(K)) - sum K_i C_i, or
// 0 for K = 0. No capacity checks; callers enumerate valid profiles.
double ObtainAllWelfare(const Scenario& scenario, const std::vector<int>& k);

enum class SolveMethod { kBrute, kStructured };

std::string_view SolveMethodName(SolveMethod method);

struct WelfareReport {
  SolveMethod method = SolveMethod::kBrute;
  double optimal_welfare = 0.0;              // W*, never negative
  std::vector<SocialState> optimal_states;   // sorted, lexicographic on K
  // False when the structured search ran with I_H non-empty: its coordinate
  // search is not proven to find the joint optimum.
  bool certified = true;
  std::uint64_t evaluated = 0;  // welfare evaluations performed
};

// Exhaustive search over participation profiles. Positive-welfare candidates
// give the model to everyone (B = N - K); the all-abstain state is always a
// candidate. Throws Error(kCapExceeded) if prod(N_i + 1) > cap.
WelfareReport SolveEfficientBrute(const Scenario& scenario,
                                  std::uint64_t cap = kDefaultEnumerationCap);

// Searches only the structured candidates: all-or-none corners when every
// type is low-index; otherwise low-index types abstain from training and the
// high-index coordinates range over {0, N_j}, integer neighbours of
// continuous stationary points, and a coordinate-wise local search.
WelfareReport SolveEfficientStructured(const Scenario& scenario);

// The lexicographically smallest socially efficient state.
SocialState Recommendation(const WelfareReport& report);

struct FlOptimum {
  ParticipationProfile profile;  // lexicographically smallest maximizer
  double welfare = 0.0;
};

// Best W_FL over all profiles, including the empty one.
// Throws Error(kCapExceeded) like SolveEfficientBrute.
FlOptimum SolveFlOptimum(const Scenario& scenario,
                         std::uint64_t cap = kDefaultEnumerationCap);

// CSV of W over every valid (K, B): K_1..K_I, B_1..B_I, eps, W. eps is blank
// for the empty coalition. Throws kCapExceeded past `cap` rows.
void WriteWelfareLandscape(const Scenario& scenario, std::ostream& out,
                           std::uint64_t cap = 1'000'000);

}  // namespace netfed

#endif  // NETFED_WELFARE_H_
