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

#include <benchmark/benchmark.h>

#include <string>

#include "netfed/dynamics.h"
#include "netfed/mc_oracle.h"
#include "netfed/mechanism.h"
#include "netfed/scenario.h"
#include "netfed/welfare.h"

namespace netfed {
namespace {

// Three types with n clients each, costs proportional to data size.
Scenario Market(int n) {
  return Scenario::Create(784, 2.0, 0.0,
                          {{50, 50.0, n}, {120, 120.0, n}, {300, 300.0, n}},
                          UtilityFunction::Power(40, 16))
      .WithPerSampleCost(0.5);
}

void BM_SolveBrute(benchmark::State& state) {
  Scenario s = Market(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveEfficientBrute(s).optimal_welfare);
  }
}
BENCHMARK(BM_SolveBrute)->Arg(2)->Arg(4)->Arg(6)->Arg(8);

void BM_SolveStructured(benchmark::State& state) {
  Scenario s = Market(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveEfficientStructured(s).optimal_welfare);
  }
}
BENCHMARK(BM_SolveStructured)->Arg(2)->Arg(8)->Arg(32)->Arg(128);

void BM_Dynamics(benchmark::State& state) {
  Scenario s = Market(static_cast<int>(state.range(0)));
  Mechanism mech = Mechanism::Semts(s, ThetaForm::kSubtractive);
  int n = s.total_clients();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    DynamicsTrace trace = RunDynamics(
        mech, {RandomDecisions(s, seed), ShuffledOrder(s, seed), n * (n + 1)});
    ++seed;
    benchmark::DoNotOptimize(trace.rounds);
  }
}
BENCHMARK(BM_Dynamics)->Arg(2)->Arg(5)->Arg(10);

void BM_Oracle(benchmark::State& state) {
  Scenario s = Scenario::Create(5, 1.0, 0.0, {{200, 0.0, 2}},
                                UtilityFunction::Power(1, 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        SimulateGeneralization(s, ParticipationProfile({2}),
                               static_cast<int>(state.range(0)), 7, 1)
            .empirical);
  }
}
BENCHMARK(BM_Oracle)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace netfed

BENCHMARK_MAIN();
