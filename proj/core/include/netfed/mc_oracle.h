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

#ifndef NETFED_MC_ORACLE_H_
#define NETFED_MC_ORACLE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "netfed/scenario.h"
#include "netfed/state.h"

namespace netfed {

// Monte Carlo estimate of the generalization error of one-shot federated
// averaging in a linear student-teacher task.
//
// Per trial: a global teacher w* ~ N(0, I_d); participant n gets its own
// teacher w_n = w* + delta_n with delta_n ~ N(0, (sigma2 / d) I_d), draws
// D_n inputs x ~ N(0, I_d) with targets x.w_n + N(0, gamma2), and fits ordinary
// least squares. The K local fits are averaged with equal weights and the
// trial error is the mean over participants of |w_avg - w_n|^2.
struct OracleReport {
  double empirical = 0.0;       // mean trial error
  double standard_error = 0.0;  // sample sd / sqrt(trials)
  double analytic = 0.0;        // closed-form generalization error
  double relative_error = 0.0;  // |empirical - analytic| / analytic
  // Expected excess of the exact OLS error over the closed form:
  // gamma2 * sum_i K_i d (1/(D_i - d - 1) - 1/D_i) / K^2.
  double finite_sample_bias = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;
};

// Trials draw from streams seeded by (seed, trial index), so results do not
// depend on `threads`. threads <= 0 means ThreadBudget().
// Throws kEmptyCoalition for K = 0, kIllPosed if a participating type has
// D_i < d + 2, kValidation for trials < 1.
// One participant per entry of data_sizes. gamma2 may be 0 here (noise-free
// local fits), which a Scenario does not allow.
struct SyntheticTask {
  int dim = 1;
  double gamma2 = 1.0;
  double sigma2 = 0.0;
  std::vector<int> data_sizes;
};

SyntheticTask TaskFor(const Scenario& scenario,
                      const ParticipationProfile& k);

// Closed-form error of the task (same expression as GeneralizationError).
double AnalyticError(const SyntheticTask& task);

OracleReport SimulateTask(const SyntheticTask& task, int trials,
                          std::uint64_t seed, int threads = 0);

OracleReport SimulateGeneralization(const Scenario& scenario,
                                    const ParticipationProfile& k, int trials,
                                    std::uint64_t seed, int threads = 0);

struct OracleVerdict {
  bool pass = false;
  double relative_error = 0.0;
  double tolerance = 0.0;
  std::string diagnostics;
};

OracleVerdict CompareToFormula(const OracleReport& report, double tol_rel);

}  // namespace netfed

#endif  // NETFED_MC_ORACLE_H_
