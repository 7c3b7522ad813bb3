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
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "netfed/error.h"
#include "netfed/performance.h"
#include "netfed/report.h"
#include "netfed/sweep.h"

namespace netfed {
namespace {

Scenario S2Template() {
  return Scenario::Create(2, 1.0, 0.0, {{10, 2.0, 2}, {10, 20.0, 1}},
                          UtilityFunction::Power(1, 1));
}

TEST(SweepTest, WelfareFallsWithCostAndDominatesFederatedOptimum) {
  std::vector<SweepRow> rows = RunSweep({S2Template(), {0.2, 0.8, 2.0}}, 1);
  ASSERT_EQ(rows.size(), 3u);
  for (size_t i = 0; i < rows.size(); ++i) {
    ASSERT_TRUE(rows[i].ok);
    EXPECT_GE(rows[i].w_semts, rows[i].w_fl_opt);
    EXPECT_GE(rows[i].w_semts, rows[i].w_modified_fl);
    if (i > 0) EXPECT_LE(rows[i].w_semts, rows[i - 1].w_semts);
  }
}

TEST(SweepTest, ZeroCostMeansEveryoneTrains) {
  SweepRow row = EvaluateCostPoint(S2Template(), 0.0);
  double full = 3 * ModelUtility(S2Template(), ParticipationProfile({2, 1}));
  EXPECT_DOUBLE_EQ(row.w_semts, full);
  EXPECT_DOUBLE_EQ(row.w_fl_opt, full);
  EXPECT_TRUE(row.semts_converged);
  EXPECT_DOUBLE_EQ(row.semts_dynamics_welfare, full);
}

TEST(SweepTest, ProhibitiveCostGivesZeroRow) {
  SweepRow row = EvaluateCostPoint(S2Template(), 1e6);
  EXPECT_EQ(row.w_semts, 0.0);
  EXPECT_EQ(row.w_fl_opt, 0.0);
  EXPECT_EQ(row.w_modified_fl, 0.0);
  EXPECT_FALSE(row.eps_star.has_value());
}

TEST(SweepTest, RowsAreIndependentOfGridComposition) {
  std::vector<SweepRow> rows = RunSweep({S2Template(), {0.1, 0.5, 3.0}}, 2);
  for (const SweepRow& row : rows) {
    SweepRow alone = EvaluateCostPoint(S2Template(), row.c);
    EXPECT_EQ(alone.w_semts, row.w_semts);
    EXPECT_EQ(alone.w_fl_opt, row.w_fl_opt);
    EXPECT_EQ(alone.w_modified_fl, row.w_modified_fl);
    EXPECT_TRUE(std::isfinite(row.w_semts));
    EXPECT_TRUE(std::isfinite(row.w_modified_fl));
  }
}

TEST(SweepTest, RejectsBadGrids) {
  for (const std::vector<double>& grid :
       {std::vector<double>{}, std::vector<double>{0.5, 0.5},
        std::vector<double>{1.0, 0.2}, std::vector<double>{-1.0}}) {
    try {
      RunSweep({S2Template(), grid});
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kValidation);
    }
  }
}

TEST(SweepTest, CapErrorsMarkRowsFailed) {
  std::vector<SweepRow> rows = RunSweep({S2Template(), {0.1, 0.2}, 3}, 1);
  for (const SweepRow& row : rows) {
    EXPECT_FALSE(row.ok);
    EXPECT_FALSE(row.error.empty());
  }
  std::ostringstream out;
  WriteSweepCsv(rows, out);
  EXPECT_NE(out.str().find("\n0.1,,,,,,\n"), std::string::npos);
}

TEST(SweepTest, CsvSchema) {
  std::ostringstream out;
  WriteSweepCsv(RunSweep({S2Template(), {0.2}}, 1), out);
  std::string csv = out.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "c,W_semts,W_fl_opt,W_modified_fl,K_star,B_star,eps_star");
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  // C = (2, 2): everyone trains, W = 3 * 15 - 4.
  EXPECT_NE(csv.find("0.2,39,39,"), std::string::npos);
  EXPECT_NE(csv.find(",2;1,0;0,0.0666666666667\n"), std::string::npos);
}

TEST(ReportTest, NumbersUseTwelveSignificantDigits) {
  EXPECT_EQ(FormatNumber(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(FormatNumber(26.0), "26");
  EXPECT_EQ(FormatNumber(-8.0), "-8");
  EXPECT_EQ(FormatNumber(1e-20), "1e-20");
}

TEST(ReportTest, JsonIsStableAndOrdered) {
  Scenario s = S2Template();
  ParticipationProfile k({2, 0});
  NetworkEffectReport r = AnalyzeNetworkEffects(s, k);
  std::string a = NetworkEffectJson(s, k, r);
  EXPECT_EQ(a, NetworkEffectJson(s, k, AnalyzeNetworkEffects(s, k)));
  EXPECT_LT(a.find("\"eps\""), a.find("\"eta\""));
  EXPECT_LT(a.find("\"eta\""), a.find("\"types\""));
  auto doc = nlohmann::json::parse(a);
  EXPECT_DOUBLE_EQ(doc["eta"].get<double>(), 0.25);
  EXPECT_EQ(doc["types"][0]["region"], "II");
  EXPECT_TRUE(doc["types"][0]["delta_eps"].is_null());
}

TEST(ReportTest, QuoteJsonFields) {
  Scenario s = S2Template();
  Mechanism mech = Mechanism::Semts(s);
  SocialState st{{2, 0}, {0, 1}};
  MechanismQuote q = mech.Quote(st.Participants());
  auto doc = nlohmann::json::parse(QuoteJson(q, st, BudgetResidual(st, q)));
  for (const char* key :
       {"price", "rewards", "branch", "theta", "residual", "recommendation"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  EXPECT_EQ(doc["price"].get<double>(), 10.0);
  EXPECT_EQ(doc["residual"].get<double>(), 26.0);
  EXPECT_EQ(doc["theta"].get<double>(), -1.33333333333);
}

TEST(ReportTest, WriteTextFileFailsOnBadPath) {
  try {
    WriteTextFile("/nonexistent-dir/out.json", "x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace netfed
