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

#include "netfed/mc_oracle.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include <Eigen/Dense>

#include "netfed/error.h"
#include "netfed/parallel.h"
#include "netfed/performance.h"

namespace netfed {
namespace {

double RunTrial(const SyntheticTask& task, std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int d = task.dim;
  const int k = static_cast<int>(task.data_sizes.size());
  const double teacher_sd = std::sqrt(task.sigma2 / d);
  const double noise_sd = std::sqrt(task.gamma2);

  Eigen::VectorXd base(d);
  for (int c = 0; c < d; ++c) base(c) = normal(rng);

  Eigen::MatrixXd teachers(d, k);
  Eigen::VectorXd average = Eigen::VectorXd::Zero(d);
  for (int n = 0; n < k; ++n) {
    Eigen::VectorXd teacher(d);
    for (int c = 0; c < d; ++c) teacher(c) = base(c) + teacher_sd * normal(rng);
    teachers.col(n) = teacher;

    const int samples = task.data_sizes[n];
    Eigen::MatrixXd x(samples, d);
    for (int r = 0; r < samples; ++r) {
      for (int c = 0; c < d; ++c) x(r, c) = normal(rng);
    }
    Eigen::VectorXd y = x * teacher;
    for (int r = 0; r < samples; ++r) y(r) += noise_sd * normal(rng);
    Eigen::VectorXd fit = x.colPivHouseholderQr().solve(y);
    average += fit;
  }
  average /= k;

  double error = 0.0;
  for (int n = 0; n < k; ++n) error += (average - teachers.col(n)).squaredNorm();
  return error / k;
}

}  // namespace

SyntheticTask TaskFor(const Scenario& s, const ParticipationProfile& k) {
  CheckProfile(s, k);
  SyntheticTask task;
  task.dim = s.dim();
  task.gamma2 = s.gamma2();
  task.sigma2 = s.sigma2();
  for (int i = 0; i < s.num_types(); ++i) {
    task.data_sizes.insert(task.data_sizes.end(), k[i], s.type(i).data_size);
  }
  return task;
}

double AnalyticError(const SyntheticTask& task) {
  double kk = static_cast<double>(task.data_sizes.size());
  double mass = 0.0;
  for (int size : task.data_sizes) mass += 1.0 / size;
  return task.dim * task.gamma2 / (kk * kk) * mass +
         (kk - 1.0) / kk * task.sigma2;
}

OracleReport SimulateTask(const SyntheticTask& task, int trials,
                          std::uint64_t seed, int threads) {
  if (task.data_sizes.empty()) {
    throw Error(ErrorCode::kEmptyCoalition,
                "the oracle needs at least one participant");
  }
  if (trials < 1) {
    throw Error(ErrorCode::kValidation, "trials must be at least 1");
  }
  if (task.dim < 1 || !(task.gamma2 >= 0.0) || !(task.sigma2 >= 0.0)) {
    throw Error(ErrorCode::kValidation,
                "task needs d >= 1 and non-negative variances");
  }
  for (int size : task.data_sizes) {
    if (size < task.dim + 2) {
      throw Error(ErrorCode::kIllPosed,
                  "local least squares needs D >= d + 2 (D = " +
                      std::to_string(size) +
                      ", d = " + std::to_string(task.dim) + ")");
    }
  }

  auto start = std::chrono::steady_clock::now();
  std::vector<double> errors(trials);
  ParallelFor(trials, threads > 0 ? threads : ThreadBudget(),
              [&](int t) { errors[t] = RunTrial(task, seed, t); });

  OracleReport report;
  report.trials = trials;
  report.seed = seed;
  double sum = 0.0;
  for (double e : errors) sum += e;
  report.empirical = sum / trials;
  if (trials > 1) {
    double ss = 0.0;
    for (double e : errors) ss += (e - report.empirical) * (e - report.empirical);
    report.standard_error = std::sqrt(ss / (trials - 1) / trials);
  }
  report.analytic = AnalyticError(task);
  report.relative_error =
      report.analytic > 0.0
          ? std::abs(report.empirical - report.analytic) / report.analytic
          : (report.empirical == 0.0 ? 0.0 : INFINITY);
  double kk = static_cast<double>(task.data_sizes.size());
  double bias = 0.0;
  for (int size : task.data_sizes) {
    bias += task.dim * (1.0 / (size - task.dim - 1.0) - 1.0 / size);
  }
  report.finite_sample_bias = task.gamma2 * bias / (kk * kk);
  report.runtime_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  return report;
}

OracleReport SimulateGeneralization(const Scenario& s,
                                    const ParticipationProfile& k, int trials,
                                    std::uint64_t seed, int threads) {
  CheckProfile(s, k);
  if (k.Empty()) {
    throw Error(ErrorCode::kEmptyCoalition,
                "the coalition is empty (K = 0); no model is trained");
  }
  return SimulateTask(TaskFor(s, k), trials, seed, threads);
}

OracleVerdict CompareToFormula(const OracleReport& report, double tol_rel) {
  OracleVerdict v;
  v.tolerance = tol_rel;
  v.relative_error = report.relative_error;
  v.pass = report.relative_error <= tol_rel;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "empirical %.6g vs analytic %.6g: relative error %.4g "
                "(tolerance %.4g); expected finite-sample bias %.6g, "
                "standard error %.3g",
                report.empirical, report.analytic, report.relative_error,
                tol_rel, report.finite_sample_bias, report.standard_error);
  v.diagnostics = buf;
  return v;
}

}  // namespace netfed
