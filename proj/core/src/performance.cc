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

#include "netfed/performance.h"

#include <cmath>

#include "netfed/error.h"

namespace netfed {
namespace {

// Sum of K_i / D_i.
double InverseDataMass(const Scenario& s, const std::vector<int>& counts) {
  double total = 0.0;
  for (int i = 0; i < s.num_types(); ++i) {
    total += static_cast<double>(counts[i]) / s.type(i).data_size;
  }
  return total;
}

void RequireNonEmpty(const ParticipationProfile& k) {
  if (k.Empty()) {
    throw Error(ErrorCode::kEmptyCoalition,
                "the coalition is empty (K = 0); no model is trained");
  }
}

}  // namespace

std::optional<double> ErrorOfCounts(const Scenario& s,
                                    const std::vector<int>& counts) {
  long long total = 0;
  for (int c : counts) total += c;
  if (total == 0) return std::nullopt;
  double kk = static_cast<double>(total);
  return s.data_scale() / (kk * kk) * InverseDataMass(s, counts) +
         (kk - 1.0) / kk * s.sigma2();
}

double GeneralizationError(const Scenario& s, const ParticipationProfile& k) {
  CheckProfile(s, k);
  RequireNonEmpty(k);
  return *ErrorOfCounts(s, k.counts);
}

double ModelUtility(const Scenario& s, const ParticipationProfile& k) {
  CheckProfile(s, k);
  std::optional<double> eps = ErrorOfCounts(s, k.counts);
  return eps ? s.utility()(*eps) : 0.0;
}

double ParticipationEffect(const Scenario& s, const ParticipationProfile& k,
                           int j) {
  CheckProfile(s, k);
  RequireNonEmpty(k);
  if (j < 0 || j >= s.num_types()) {
    throw Error(ErrorCode::kCapacity, "type index out of range");
  }
  if (k[j] >= s.type(j).count) {
    throw Error(ErrorCode::kCapacity,
                "type " + std::to_string(j + 1) +
                    " is at capacity; no client left to add");
  }
  std::vector<int> next = k.counts;
  ++next[j];
  return *ErrorOfCounts(s, k.counts) - *ErrorOfCounts(s, next);
}

double EtaThreshold(const Scenario& s, const ParticipationProfile& k) {
  CheckProfile(s, k);
  RequireNonEmpty(k);
  double kk = k.Total();
  return (2.0 * kk + 1.0) * InverseDataMass(s, k.counts) / (kk * kk) -
         (kk + 1.0) * s.sigma2() / (s.data_scale() * kk);
}

MergeResult MergeBenefit(const Scenario& s, const ParticipationProfile& a,
                         const ParticipationProfile& b) {
  CheckProfile(s, a);
  CheckProfile(s, b);
  RequireNonEmpty(a);
  RequireNonEmpty(b);
  std::vector<int> merged(s.num_types());
  for (int i = 0; i < s.num_types(); ++i) merged[i] = a[i] + b[i];
  CheckProfile(s, ParticipationProfile(merged));

  MergeResult r;
  r.eps_a = *ErrorOfCounts(s, a.counts);
  r.eps_b = *ErrorOfCounts(s, b.counts);
  r.eps_merged = *ErrorOfCounts(s, merged);
  r.benefits = r.eps_merged < std::max(r.eps_a, r.eps_b);

  double ka = a.Total();
  double kb = b.Total();
  double ha = ka / InverseDataMass(s, a.counts);
  double hb = kb / InverseDataMass(s, b.counts);
  if (ha > hb) {
    std::swap(ha, hb);
    std::swap(ka, kb);
  }
  r.harmonic_a = ha;
  r.harmonic_b = hb;
  r.ratio_bound =
      (hb * kb + ka * (2.0 * hb - ha)) / (ha * hb * (ka + kb) / s.dim());
  r.condition_holds = s.sigma2() / s.gamma2() < r.ratio_bound;
  return r;
}

std::string_view RegionName(Region region) {
  switch (region) {
    case Region::kI:
      return "I";
    case Region::kII:
      return "II";
    case Region::kIII:
      return "III";
    case Region::kIV:
      return "IV";
  }
  return "II";
}

Region ClassifyRegion(const Scenario& s, const ParticipationProfile& k,
                      int j) {
  double eta = EtaThreshold(s, k);
  if (j < 0 || j >= s.num_types()) {
    throw Error(ErrorCode::kCapacity, "type index out of range");
  }
  double x = 1.0 / s.type(j).data_size;
  double r = s.sigma2() / s.data_scale();
  if (x <= eta) return x < r ? Region::kI : Region::kII;
  return x <= r ? Region::kIII : Region::kIV;
}

int TwoTypeTurningPoint(int d1, int d2, int k2) {
  double D1 = d1;
  double D2 = d2;
  double K2 = k2;
  double root = std::sqrt(4.0 * K2 * K2 * (D2 - D1) * (D2 - D1) + D2 * D2);
  double value = std::ceil((-2.0 * K2 * D1 - D2 + root) / (2.0 * D2));
  return value > 0.0 ? static_cast<int>(value) : 0;
}

NetworkEffectReport AnalyzeNetworkEffects(const Scenario& s,
                                          const ParticipationProfile& k) {
  NetworkEffectReport report;
  report.eps = GeneralizationError(s, k);
  report.eta = EtaThreshold(s, k);
  for (int j = 0; j < s.num_types(); ++j) {
    TypeEffect effect;
    effect.region = ClassifyRegion(s, k, j);
    if (k[j] < s.type(j).count) effect.delta_eps = ParticipationEffect(s, k, j);
    report.types.push_back(effect);
  }
  return report;
}

}  // namespace netfed
