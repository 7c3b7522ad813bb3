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

#include "netfed/report.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <nlohmann/json.hpp>

#include "netfed/error.h"

namespace netfed {
namespace {

using Json = nlohmann::ordered_json;

// Rounds to 12 significant digits; the serializer then prints the shortest
// representation of the rounded value.
Json Number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return std::strtod(FormatNumber(value).c_str(), nullptr);
}

Json Numbers(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(Number(v));
  return out;
}

Json StateJson(const SocialState& st) {
  return Json{{"K", st.join}, {"B", st.buy}};
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string FormatNumber(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string NetworkEffectJson(const Scenario& scenario,
                              const ParticipationProfile& k,
                              const NetworkEffectReport& report) {
  Json types = Json::array();
  for (int i = 0; i < static_cast<int>(report.types.size()); ++i) {
    const TypeEffect& t = report.types[i];
    types.push_back(Json{
        {"type", i + 1},
        {"D", scenario.type(i).data_size},
        {"region", RegionName(t.region)},
        {"delta_eps", t.delta_eps ? Number(*t.delta_eps) : Json(nullptr)}});
  }
  Json j{{"profile", k.counts},
         {"eps", Number(report.eps)},
         {"eta", Number(report.eta)},
         {"types", types}};
  return Dump(j);
}

std::string WelfareJson(const Scenario& scenario, const WelfareReport& report,
                        const FlOptimum& fl_optimum) {
  Json states = Json::array();
  for (const SocialState& st : report.optimal_states) {
    states.push_back(StateJson(st));
  }
  SocialState rec = Recommendation(report);
  std::optional<double> eps = ErrorOfCounts(scenario, rec.join);
  Json j{{"method", SolveMethodName(report.method)},
         {"W_star", Number(report.optimal_welfare)},
         {"recommendation", StateJson(rec)},
         {"eps_star", eps ? Number(*eps) : Json(nullptr)},
         {"optimal_states", states},
         {"certified", report.certified},
         {"evaluated", report.evaluated},
         {"fl_optimum",
          Json{{"K", fl_optimum.profile.counts},
               {"W", Number(fl_optimum.welfare)}}}};
  return Dump(j);
}

std::string QuoteJson(const MechanismQuote& quote, const SocialState& state,
                      double residual) {
  Json j{{"price", Number(quote.price)},
         {"rewards", Numbers(quote.rewards)},
         {"branch", QuoteBranchName(quote.branch)},
         {"theta", quote.theta ? Number(*quote.theta) : Json(nullptr)},
         {"residual", Number(residual)},
         {"recommendation", quote.recommendation
                                ? StateJson(*quote.recommendation)
                                : Json(nullptr)},
         {"utility", Number(quote.utility)},
         {"average_cost", Number(quote.average_cost)},
         {"state", StateJson(state)}};
  return Dump(j);
}

std::string DynamicsSummaryJson(const Mechanism& mechanism,
                                const DynamicsTrace& trace) {
  Json j{{"mechanism", MechanismKindName(mechanism.kind())},
         {"converged", trace.converged},
         {"rounds", trace.rounds},
         {"transitions", trace.transitions.size()},
         {"final_state", StateJson(trace.final_state)},
         {"final_welfare", Number(trace.final_welfare)},
         {"W_star", mechanism.target()
                        ? Number(mechanism.target()->optimal_welfare)
                        : Json(nullptr)},
         {"final_residual", Number(trace.final_residual)},
         {"final_post_residual", Number(trace.final_post_residual)}};
  if (mechanism.kind() == MechanismKind::kSemts) {
    j["theta_form"] = ThetaFormName(mechanism.theta_form());
  }
  return Dump(j);
}

std::string DynamicsTransitionsJsonl(const DynamicsTrace& trace) {
  std::string out;
  for (const Transition& t : trace.transitions) {
    Json j{{"round", t.round},
           {"client", t.client},
           {"type", t.type + 1},
           {"from", DecisionName(t.from)},
           {"to", DecisionName(t.to)},
           {"K", t.state.join},
           {"B", t.state.buy},
           {"payoffs",
            Json{{"join", Number(t.payoffs[static_cast<int>(Decision::kJoin)])},
                 {"buy", Number(t.payoffs[static_cast<int>(Decision::kBuy)])},
                 {"abstain",
                  Number(t.payoffs[static_cast<int>(Decision::kAbstain)])}}},
           {"tie", t.tie}};
    out += j.dump() + "\n";
  }
  return out;
}

std::string OracleJson(const OracleReport& report,
                       const OracleVerdict& verdict) {
  Json j{{"empirical", Number(report.empirical)},
         {"standard_error", Number(report.standard_error)},
         {"analytic", Number(report.analytic)},
         {"relative_error", Number(report.relative_error)},
         {"finite_sample_bias", Number(report.finite_sample_bias)},
         {"trials", report.trials},
         {"seed", report.seed},
         {"runtime_seconds", Number(report.runtime_seconds)},
         {"pass", verdict.pass},
         {"tolerance", Number(verdict.tolerance)},
         {"diagnostics", verdict.diagnostics}};
  return Dump(j);
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

}  // namespace netfed
