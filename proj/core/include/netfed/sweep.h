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

#ifndef NETFED_SWEEP_H_
#define NETFED_SWEEP_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "netfed/mechanism.h"
#include "netfed/scenario.h"
#include "netfed/state.h"
#include "netfed/welfare.h"

namespace netfed {

// Welfare of the mechanisms as the per-sample participation cost varies.
struct SweepSpec {
  Scenario base;                  // costs are overwritten with c * D_i
  std::vector<double> cost_grid;  // strictly increasing, non-empty
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  ThetaForm theta_form = ThetaForm::kSubtractive;
};

struct SweepRow {
  double c = 0.0;
  bool ok = true;
  std::string error;  // set when !ok

  double w_semts = 0.0;         // W*_MTS from the exact solver
  double w_fl_opt = 0.0;        // best welfare without model trading
  double w_modified_fl = 0.0;   // client payoffs at the benchmark's outcome
  SocialState target;           // recommended efficient state
  std::optional<double> eps_star;

  // SEMTS best-response run from all-abstain in natural order.
  bool semts_converged = false;
  double semts_dynamics_welfare = 0.0;
  bool modified_fl_converged = false;
};

// Evaluates one grid point. Solver errors are caught and reported in the row.
SweepRow EvaluateCostPoint(const Scenario& base, double c,
                           std::uint64_t cap = kDefaultEnumerationCap,
                           ThetaForm form = ThetaForm::kSubtractive);

// Rows in grid order; rows are computed on up to `threads` workers.
// Throws Error(kValidation) for an empty or non-increasing grid.
std::vector<SweepRow> RunSweep(const SweepSpec& spec, int threads = 0);

// Header: c,W_semts,W_fl_opt,W_modified_fl,K_star,B_star,eps_star
void WriteSweepCsv(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace netfed

#endif  // NETFED_SWEEP_H_
