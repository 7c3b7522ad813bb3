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

#include "netfed/sweep.h"

#include <algorithm>
#include <ostream>

#include "netfed/dynamics.h"
#include "netfed/error.h"
#include "netfed/parallel.h"
#include "netfed/performance.h"
#include "netfed/report.h"

namespace netfed {

SweepRow EvaluateCostPoint(const Scenario& base, double c, std::uint64_t cap,
                           ThetaForm form) {
  SweepRow row;
  row.c = c;
  try {
    Scenario s = base.WithPerSampleCost(c);
    WelfareReport report = SolveEfficientBrute(s, cap);
    EfficientTarget target = TargetFromReport(report);
    row.w_semts = report.optimal_welfare;
    row.target = target.recommendation;
    row.eps_star = ErrorOfCounts(s, row.target.join);
    row.w_fl_opt = SolveFlOptimum(s, cap).welfare;

    int n = s.total_clients();
    DynamicsOptions options;
    options.initial = AllAbstainDecisions(s);
    options.order = NaturalOrder(s);
    options.max_rounds = n * (n + 1);

    DynamicsTrace semts =
        RunDynamics(Mechanism::Semts(s, target, form), options);
    row.semts_converged = semts.converged;
    row.semts_dynamics_welfare = semts.final_welfare;

    DynamicsTrace fl = RunDynamics(Mechanism::ModifiedFl(s), options);
    row.modified_fl_converged = fl.converged;
    row.w_modified_fl = fl.final_welfare;
  } catch (const Error& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> RunSweep(const SweepSpec& spec, int threads) {
  if (spec.cost_grid.empty()) {
    throw Error(ErrorCode::kValidation, "cost grid must not be empty");
  }
  for (size_t i = 0; i < spec.cost_grid.size(); ++i) {
    if (!(spec.cost_grid[i] >= 0.0)) {
      throw Error(ErrorCode::kValidation,
                  "cost grid values must be non-negative");
    }
    if (i > 0 && !(spec.cost_grid[i] > spec.cost_grid[i - 1])) {
      throw Error(ErrorCode::kValidation,
                  "cost grid must be strictly increasing");
    }
  }
  std::vector<SweepRow> rows(spec.cost_grid.size());
  ParallelFor(static_cast<int>(rows.size()),
              threads > 0 ? threads : ThreadBudget(), [&](int i) {
                rows[i] = EvaluateCostPoint(spec.base, spec.cost_grid[i],
                                            spec.enumeration_cap,
                                            spec.theta_form);
              });
  return rows;
}

void WriteSweepCsv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "c,W_semts,W_fl_opt,W_modified_fl,K_star,B_star,eps_star\n";
  for (const SweepRow& row : rows) {
    out << FormatNumber(row.c);
    if (!row.ok) {
      out << ",,,,,,\n";
      continue;
    }
    out << ',' << FormatNumber(row.w_semts) << ','
        << FormatNumber(row.w_fl_opt) << ','
        << FormatNumber(row.w_modified_fl) << ','
        << FormatCounts(row.target.join) << ','
        << FormatCounts(row.target.buy) << ',';
    if (row.eps_star) out << FormatNumber(*row.eps_star);
    out << '\n';
  }
}

}  // namespace netfed
