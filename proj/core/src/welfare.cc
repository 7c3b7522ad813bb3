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

#include "netfed/welfare.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "netfed/error.h"
#include "netfed/performance.h"
#include "netfed/report.h"

namespace netfed {
namespace {

constexpr int kStationaryGrid = 200;
constexpr double kRootTolerance = 1e-9;

std::uint64_t ProfileCount(const Scenario& s) {
  std::uint64_t total = 1;
  for (const ClientType& t : s.types()) {
    std::uint64_t next = total * static_cast<std::uint64_t>(t.count + 1);
    if (next / static_cast<std::uint64_t>(t.count + 1) != total) {
      return UINT64_MAX;
    }
    total = next;
  }
  return total;
}

void CheckCap(const Scenario& s, std::uint64_t cap) {
  std::uint64_t profiles = ProfileCount(s);
  if (profiles > cap) {
    throw Error(ErrorCode::kCapExceeded,
                std::to_string(profiles) +
                    " participation profiles exceed the enumeration cap of " +
                    std::to_string(cap) +
                    "; use the structured solver instead");
  }
}

// Advances k like an odometer over [0, N_i]; false after the last profile.
bool NextProfile(const Scenario& s, std::vector<int>& k) {
  for (int i = static_cast<int>(k.size()) - 1; i >= 0; --i) {
    if (k[i] < s.type(i).count) {
      ++k[i];
      return true;
    }
    k[i] = 0;
  }
  return false;
}

SocialState ObtainAllState(const Scenario& s, const std::vector<int>& k) {
  bool empty = std::all_of(k.begin(), k.end(), [](int v) { return v == 0; });
  if (empty) return SocialState::AllAbstain(s.num_types());
  SocialState st{k, std::vector<int>(k.size())};
  for (int i = 0; i < s.num_types(); ++i) st.buy[i] = s.type(i).count - k[i];
  return st;
}

// Continuous relaxation of the obtain-all welfare derivative along K_j.
double WelfareSlope(const Scenario& s, std::vector<double> k, int j, double x) {
  k[j] = x;
  double total = 0.0;
  double mass = 0.0;
  for (int i = 0; i < s.num_types(); ++i) {
    total += k[i];
    mass += k[i] / s.type(i).data_size;
  }
  double eps = s.data_scale() / (total * total) * mass +
               (total - 1.0) / total * s.sigma2();
  double deps = s.data_scale() * (1.0 / s.type(j).data_size / (total * total) -
                                  2.0 * mass / (total * total * total)) +
                s.sigma2() / (total * total);
  return s.total_clients() * s.utility().Derivative(eps) * deps -
         s.type(j).cost;
}

std::vector<double> StationaryPoints(const Scenario& s,
                                     const std::vector<int>& k, int j) {
  std::vector<double> roots;
  double hi = s.type(j).count;
  double lo = 1.0;
  if (hi <= lo) return roots;
  std::vector<double> base(k.begin(), k.end());
  auto slope = [&](double x) { return WelfareSlope(s, base, j, x); };
  double prev_x = lo;
  double prev_f = slope(lo);
  for (int g = 1; g <= kStationaryGrid; ++g) {
    double x = lo + (hi - lo) * g / kStationaryGrid;
    double f = slope(x);
    if (prev_f == 0.0) {
      roots.push_back(prev_x);
    } else if (std::isfinite(prev_f) && std::isfinite(f) &&
               (prev_f < 0.0) != (f < 0.0) && f != 0.0) {
      double a = prev_x;
      double b = x;
      double fa = prev_f;
      while (b - a > kRootTolerance) {
        double m = 0.5 * (a + b);
        double fm = slope(m);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_f = f;
  }
  if (prev_f == 0.0) roots.push_back(prev_x);
  return roots;
}

WelfareReport Collect(SolveMethod method,
                      const std::map<std::vector<int>, double>& seen,
                      std::uint64_t evaluated) {
  WelfareReport report;
  report.method = method;
  report.evaluated = evaluated;
  double best = 0.0;
  for (const auto& [k, w] : seen) best = std::max(best, w);
  report.optimal_welfare = best;
  return report;
}

}  // namespace

double ObtainAllWelfare(const Scenario& s, const std::vector<int>& k) {
  std::optional<double> eps = ErrorOfCounts(s, k);
  if (!eps) return 0.0;
  double u = s.utility()(*eps);
  double cost = 0.0;
  for (int i = 0; i < s.num_types(); ++i) cost += k[i] * s.type(i).cost;
  return s.total_clients() * u - cost;
}

double WelfareMts(const Scenario& s, const SocialState& state) {
  CheckState(s, state);
  std::optional<double> eps = ErrorOfCounts(s, state.join);
  double u = eps ? s.utility()(*eps) : 0.0;
  double cost = 0.0;
  for (int i = 0; i < s.num_types(); ++i) {
    cost += state.join[i] * s.type(i).cost;
  }
  return state.Obtainers() * u - cost;
}

double WelfareFl(const Scenario& s, const ParticipationProfile& k) {
  CheckProfile(s, k);
  std::optional<double> eps = ErrorOfCounts(s, k.counts);
  if (!eps) return 0.0;
  // K U - sum K_i C_i, accumulated like ObtainAllWelfare so the two agree
  // bit for bit at K = N.
  double u = s.utility()(*eps);
  double cost = 0.0;
  for (int i = 0; i < s.num_types(); ++i) cost += k[i] * s.type(i).cost;
  return k.Total() * u - cost;
}

std::string_view SolveMethodName(SolveMethod method) {
  return method == SolveMethod::kBrute ? "brute" : "structured";
}

WelfareReport SolveEfficientBrute(const Scenario& s, std::uint64_t cap) {
  CheckCap(s, cap);
  int n = s.num_types();
  WelfareReport report;
  report.method = SolveMethod::kBrute;
  report.optimal_welfare = 0.0;
  report.optimal_states.push_back(SocialState::AllAbstain(n));
  std::vector<int> k(n, 0);
  while (NextProfile(s, k)) {
    double w = ObtainAllWelfare(s, k);
    ++report.evaluated;
    if (w > report.optimal_welfare) {
      report.optimal_welfare = w;
      report.optimal_states.clear();
      report.optimal_states.push_back(ObtainAllState(s, k));
    } else if (w == report.optimal_welfare) {
      report.optimal_states.push_back(ObtainAllState(s, k));
    }
  }
  std::sort(report.optimal_states.begin(), report.optimal_states.end());
  return report;
}

WelfareReport SolveEfficientStructured(const Scenario& s) {
  int n = s.num_types();
  TypePartition part = PartitionTypes(s);
  const bool high = !part.high.empty();
  const std::vector<int>& free = high ? part.high : part.low;

  std::map<std::vector<int>, double> seen;
  std::uint64_t evaluated = 0;
  auto eval = [&](const std::vector<int>& k) {
    auto it = seen.find(k);
    if (it != seen.end()) return it->second;
    ++evaluated;
    double w = ObtainAllWelfare(s, k);
    seen.emplace(k, w);
    return w;
  };

  std::vector<std::vector<int>> candidates;
  int free_count = static_cast<int>(free.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_count);
       ++mask) {
    std::vector<int> k(n, 0);
    for (int f = 0; f < free_count; ++f) {
      if (mask >> f & 1) k[free[f]] = s.type(free[f]).count;
    }
    candidates.push_back(k);
    if (!high) continue;
    for (int j : free) {
      for (double x : StationaryPoints(s, k, j)) {
        for (double r : {std::floor(x), std::ceil(x)}) {
          std::vector<int> c = k;
          c[j] = std::clamp(static_cast<int>(r), 0, s.type(j).count);
          candidates.push_back(c);
        }
      }
    }
  }

  for (std::vector<int> k : candidates) {
    eval(k);
    if (!high) continue;
    bool improved = true;
    while (improved) {
      improved = false;
      for (int j : free) {
        double best = eval(k);
        int best_x = k[j];
        std::vector<int> probe = k;
        for (int x = 0; x <= s.type(j).count; ++x) {
          probe[j] = x;
          double w = eval(probe);
          if (w > best) {
            best = w;
            best_x = x;
          }
        }
        if (best_x != k[j]) {
          k[j] = best_x;
          improved = true;
        }
      }
    }
  }

  WelfareReport report = Collect(SolveMethod::kStructured, seen, evaluated);
  report.certified = !high;
  for (const auto& [k, w] : seen) {
    if (w == report.optimal_welfare) {
      SocialState st = ObtainAllState(s, k);
      if (std::find(report.optimal_states.begin(), report.optimal_states.end(),
                    st) == report.optimal_states.end()) {
        report.optimal_states.push_back(st);
      }
    }
  }
  if (report.optimal_welfare == 0.0) {
    SocialState none = SocialState::AllAbstain(n);
    if (std::find(report.optimal_states.begin(), report.optimal_states.end(),
                  none) == report.optimal_states.end()) {
      report.optimal_states.push_back(none);
    }
  }
  std::sort(report.optimal_states.begin(), report.optimal_states.end());
  return report;
}

SocialState Recommendation(const WelfareReport& report) {
  return report.optimal_states.front();
}

FlOptimum SolveFlOptimum(const Scenario& s, std::uint64_t cap) {
  CheckCap(s, cap);
  int n = s.num_types();
  FlOptimum best{ParticipationProfile(std::vector<int>(n, 0)), 0.0};
  std::vector<int> k(n, 0);
  while (NextProfile(s, k)) {
    double w = WelfareFl(s, ParticipationProfile(k));
    if (w > best.welfare) best = {ParticipationProfile(k), w};
  }
  return best;
}

void WriteWelfareLandscape(const Scenario& s, std::ostream& out,
                           std::uint64_t cap) {
  int n = s.num_types();
  std::uint64_t states = 1;
  for (const ClientType& t : s.types()) {
    std::uint64_t per = static_cast<std::uint64_t>(t.count + 1) *
                        static_cast<std::uint64_t>(t.count + 2) / 2;
    states = states > cap ? states : states * per;
  }
  if (states > cap) {
    throw Error(ErrorCode::kCapExceeded,
                "welfare landscape has more than " + std::to_string(cap) +
                    " states");
  }
  for (int i = 0; i < n; ++i) out << "K_" << i + 1 << ',';
  for (int i = 0; i < n; ++i) out << "B_" << i + 1 << ',';
  out << "eps,W\n";

  // Odometer over (K_i, B_i) pairs with K_i + B_i <= N_i.
  SocialState st = SocialState::AllAbstain(n);
  while (true) {
    for (int i = 0; i < n; ++i) out << st.join[i] << ',';
    for (int i = 0; i < n; ++i) out << st.buy[i] << ',';
    std::optional<double> eps = ErrorOfCounts(s, st.join);
    if (eps) out << FormatNumber(*eps);
    out << ',' << FormatNumber(WelfareMts(s, st)) << '\n';

    int i = n - 1;
    for (; i >= 0; --i) {
      int cap_i = s.type(i).count;
      if (st.buy[i] + st.join[i] < cap_i) {
        ++st.buy[i];
        break;
      }
      if (st.join[i] < cap_i) {
        ++st.join[i];
        st.buy[i] = 0;
        break;
      }
      st.join[i] = 0;
      st.buy[i] = 0;
    }
    if (i < 0) break;
  }
}

}  // namespace netfed
