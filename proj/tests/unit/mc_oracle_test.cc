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

#include <cmath>

#include <gtest/gtest.h>

#include "netfed/error.h"
#include "netfed/mc_oracle.h"

namespace netfed {
namespace {

Scenario TwoClients(int d, double sigma2, int size, int count = 2) {
  return Scenario::Create(d, 1.0, sigma2, {{size, 0.0, count}},
                          UtilityFunction::Power(1, 1));
}

// Expected squared error of averaged OLS fits under the oracle's sampling
// model: E||(X'X)^-1 X'e||^2 = d gamma2 / (D - d - 1) per client.
double ExactExpectation(const SyntheticTask& t) {
  double k = t.data_sizes.size();
  double data = 0.0;
  for (int size : t.data_sizes) data += t.dim * t.gamma2 / (size - t.dim - 1.0);
  return data / (k * k) + (k - 1) / k * t.sigma2;
}

TEST(OracleTest, DataVarianceCase) {
  Scenario s = TwoClients(5, 0.0, 200);
  OracleReport r = SimulateGeneralization(s, ParticipationProfile({2}), 500, 7);
  EXPECT_DOUBLE_EQ(r.analytic, 0.0125);
  EXPECT_LE(r.relative_error, 0.15);
  double exact = ExactExpectation(TaskFor(s, ParticipationProfile({2})));
  EXPECT_NEAR(r.empirical, exact, 4 * r.standard_error);
  EXPECT_NEAR(r.finite_sample_bias, exact - 0.0125, 1e-15);
  EXPECT_TRUE(CompareToFormula(r, 0.15).pass);
}

TEST(OracleTest, ClientVarianceIsolation) {
  for (int k : {2, 3, 5}) {
    SyntheticTask task{5, 0.0, 0.5, std::vector<int>(k, 20)};
    OracleReport r = SimulateTask(task, 500, 100 + k);
    double expected = (k - 1.0) / k * 0.5;
    EXPECT_DOUBLE_EQ(r.analytic, expected);
    EXPECT_NEAR(r.empirical, expected, 3 * r.standard_error) << k;
  }
}

TEST(OracleTest, SingleClientHasNoClientVarianceTerm) {
  Scenario s = TwoClients(5, 2.0, 200, 1);
  OracleReport r = SimulateGeneralization(s, ParticipationProfile({1}), 500, 3);
  EXPECT_DOUBLE_EQ(r.analytic, 5.0 / 200.0);
  EXPECT_NEAR(r.empirical, 5.0 / 194.0, 4 * r.standard_error);
}

TEST(OracleTest, DoublingDataHalvesError) {
  SyntheticTask small{5, 1.0, 0.0, {100, 100}};
  SyntheticTask large{5, 1.0, 0.0, {200, 200}};
  double ratio = SimulateTask(large, 500, 1).empirical /
                 SimulateTask(small, 500, 2).empirical;
  EXPECT_GE(ratio, 0.4);
  EXPECT_LE(ratio, 0.6);
}

TEST(OracleTest, StandardErrorShrinksWithTrials) {
  SyntheticTask task{4, 1.0, 0.2, {60, 60, 60}};
  double se100 = SimulateTask(task, 100, 5).standard_error;
  double se400 = SimulateTask(task, 400, 5).standard_error;
  EXPECT_GT(se400 / se100, 0.35);
  EXPECT_LT(se400 / se100, 0.7);
}

TEST(OracleTest, PermutingEqualClientsChangesNothingStatistically) {
  SyntheticTask a{3, 1.0, 0.0, {40, 40, 40}};
  OracleReport r1 = SimulateTask(a, 400, 11);
  OracleReport r2 = SimulateTask(a, 400, 12);
  double se = std::hypot(r1.standard_error, r2.standard_error);
  EXPECT_NEAR(r1.empirical, r2.empirical, 3 * se);
}

TEST(OracleTest, SeedsReproduceBitIdentically) {
  SyntheticTask task{5, 1.0, 0.3, {30, 50}};
  OracleReport a = SimulateTask(task, 64, 99, 1);
  OracleReport b = SimulateTask(task, 64, 99, 3);
  EXPECT_EQ(a.empirical, b.empirical);
  EXPECT_EQ(a.standard_error, b.standard_error);
  EXPECT_NE(a.empirical, SimulateTask(task, 64, 100, 1).empirical);
}

TEST(OracleTest, Errors) {
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kUsage;
  };
  Scenario s = TwoClients(5, 0.0, 6);
  EXPECT_EQ(code([&] {
              SimulateGeneralization(s, ParticipationProfile({2}), 10, 1);
            }),
            ErrorCode::kIllPosed);
  EXPECT_EQ(code([&] {
              SimulateGeneralization(s, ParticipationProfile({0}), 10, 1);
            }),
            ErrorCode::kEmptyCoalition);
  Scenario ok = TwoClients(5, 0.0, 7);
  EXPECT_NO_THROW(SimulateGeneralization(ok, ParticipationProfile({1}), 2, 1));
  EXPECT_EQ(code([&] {
              SimulateGeneralization(ok, ParticipationProfile({1}), 0, 1);
            }),
            ErrorCode::kValidation);
}

TEST(CompareTest, Thresholds) {
  OracleReport r;
  r.analytic = 0.0125;
  r.empirical = 0.0129;
  r.relative_error = std::abs(r.empirical - r.analytic) / r.analytic;
  EXPECT_TRUE(CompareToFormula(r, 0.15).pass);
  r.empirical = r.analytic;
  r.relative_error = 0.0;
  EXPECT_TRUE(CompareToFormula(r, 0.0).pass);
  r.empirical = 2 * r.analytic;
  r.relative_error = 1.0;
  OracleVerdict v = CompareToFormula(r, 0.15);
  EXPECT_FALSE(v.pass);
  EXPECT_NE(v.diagnostics.find("finite-sample bias"), std::string::npos);
}

}  // namespace
}  // namespace netfed
