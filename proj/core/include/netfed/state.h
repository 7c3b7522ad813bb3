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

#ifndef NETFED_STATE_H_
#define NETFED_STATE_H_

#include <numeric>
#include <string>
#include <string_view>
#include <vector>

namespace netfed {

class Scenario;

// Number of participants K_i of each client type.
struct ParticipationProfile {
  std::vector<int> counts;

  ParticipationProfile() = default;
  explicit ParticipationProfile(std::vector<int> k) : counts(std::move(k)) {}

  int Total() const { return std::accumulate(counts.begin(), counts.end(), 0); }
  bool Empty() const { return Total() == 0; }
  int size() const { return static_cast<int>(counts.size()); }
  int operator[](int i) const { return counts[i]; }
  int& operator[](int i) { return counts[i]; }

  ParticipationProfile With(int i, int value) const {
    ParticipationProfile p = *this;
    p.counts[i] = value;
    return p;
  }

  auto operator<=>(const ParticipationProfile&) const = default;
};

// Participants K_i and buyers B_i per type. Everyone else abstains.
struct SocialState {
  std::vector<int> join;
  std::vector<int> buy;

  static SocialState AllAbstain(int num_types) {
    return SocialState{std::vector<int>(num_types, 0),
                       std::vector<int>(num_types, 0)};
  }

  ParticipationProfile Participants() const {
    return ParticipationProfile(join);
  }
  int Obtainers() const {
    return std::accumulate(join.begin(), join.end(), 0) +
           std::accumulate(buy.begin(), buy.end(), 0);
  }

  auto operator<=>(const SocialState&) const = default;
};

enum class Decision { kAbstain, kJoin, kBuy };

std::string_view DecisionName(Decision decision);

// Throws Error(kCapacity) unless 0 <= K_i <= N_i for every type and the
// profile has one entry per type.
void CheckProfile(const Scenario& scenario, const ParticipationProfile& k);

// Throws Error(kCapacity) unless 0 <= K_i, B_i and K_i + B_i <= N_i.
void CheckState(const Scenario& scenario, const SocialState& state);

// "k1;k2;..." rendering used in CSV cells and messages.
std::string FormatCounts(const std::vector<int>& counts);

}  // namespace netfed

#endif  // NETFED_STATE_H_
