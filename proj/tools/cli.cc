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

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "netfed/dynamics.h"
#include "netfed/error.h"
#include "netfed/mc_oracle.h"
#include "netfed/mechanism.h"
#include "netfed/performance.h"
#include "netfed/report.h"
#include "netfed/scenario.h"
#include "netfed/sweep.h"
#include "netfed/welfare.h"

namespace netfed::cli {
namespace {

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    parts.push_back(item);
  }
  return parts;
}

// Emits text to `path` when given, otherwise to `out`.
void Emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    WriteTextFile(path, text);
  }
}

ThetaForm ParseThetaForm(const std::string& name) {
  return name == "interpolated" ? ThetaForm::kInterpolated
                                : ThetaForm::kSubtractive;
}

// Exact target when the profile space is small enough, structured search
// otherwise.
WelfareReport SolveForTarget(const Scenario& s, std::ostream& err) {
  try {
    return SolveEfficientBrute(s);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kCapExceeded) throw;
    err << "note: " << e.what() << "; using the structured solver\n";
    return SolveEfficientStructured(s);
  }
}

struct Options {
  std::string scenario;
  std::string profile;
  std::string buyers;
  std::string method = "brute";
  std::string landscape;
  std::string out_path;
  std::string trace_path;
  std::string mechanism = "semts";
  std::string initial = "all_abstain";
  std::string order = "natural";
  std::string theta = "subtractive";
  std::string cost_grid;
  std::uint64_t seed = 0;
  int max_rounds = 0;
  int trials = 500;
  double tolerance = 0.15;
};

int RunAnalyze(const Options& o, std::ostream& out) {
  Scenario s = LoadScenarioFile(o.scenario);
  ParticipationProfile k(ParseCounts(o.profile));
  NetworkEffectReport report = AnalyzeNetworkEffects(s, k);
  Emit(out, o.out_path, NetworkEffectJson(s, k, report));
  return 0;
}

int RunSolve(const Options& o, std::ostream& out) {
  Scenario s = LoadScenarioFile(o.scenario);
  WelfareReport report = o.method == "structured"
                             ? SolveEfficientStructured(s)
                             : SolveEfficientBrute(s);
  FlOptimum fl = SolveFlOptimum(s);
  Emit(out, o.out_path, WelfareJson(s, report, fl));
  if (!o.landscape.empty()) {
    std::ostringstream csv;
    WriteWelfareLandscape(s, csv);
    WriteTextFile(o.landscape, csv.str());
  }
  return 0;
}

int RunQuote(const Options& o, std::ostream& out, std::ostream& err) {
  Scenario s = LoadScenarioFile(o.scenario);
  SocialState st{ParseCounts(o.profile),
                 o.buyers.empty() ? std::vector<int>(s.num_types(), 0)
                                  : ParseCounts(o.buyers)};
  CheckState(s, st);
  Mechanism mech =
      o.mechanism == "modified_fl"
          ? Mechanism::ModifiedFl(s)
          : Mechanism::Semts(s, TargetFromReport(SolveForTarget(s, err)),
                             ParseThetaForm(o.theta));
  MechanismQuote q = mech.Quote(st.Participants());
  Emit(out, o.out_path, QuoteJson(q, st, BudgetResidual(st, q)));
  return 0;
}

int RunSimulate(const Options& o, std::ostream& out, std::ostream& err) {
  Scenario s = LoadScenarioFile(o.scenario);
  Mechanism mech =
      o.mechanism == "modified_fl"
          ? Mechanism::ModifiedFl(s)
          : Mechanism::Semts(s, TargetFromReport(SolveForTarget(s, err)),
                             ParseThetaForm(o.theta));
  int n = s.total_clients();
  DynamicsOptions options;
  options.initial = o.initial == "random" ? RandomDecisions(s, o.seed)
                                          : AllAbstainDecisions(s);
  options.order =
      o.order == "shuffled" ? ShuffledOrder(s, o.seed) : NaturalOrder(s);
  options.max_rounds = o.max_rounds > 0 ? o.max_rounds : n * (n + 1);
  DynamicsTrace trace = RunDynamics(mech, options);
  if (!o.trace_path.empty()) {
    WriteTextFile(o.trace_path, DynamicsTransitionsJsonl(trace));
  }
  Emit(out, o.out_path, DynamicsSummaryJson(mech, trace));
  return 0;
}

int RunSweepCommand(const Options& o, std::ostream& out, std::ostream& err) {
  SweepSpec spec{LoadScenarioFile(o.scenario), ParseGrid(o.cost_grid),
                 kDefaultEnumerationCap, ParseThetaForm(o.theta)};
  std::vector<SweepRow> rows = RunSweep(spec);
  for (const SweepRow& row : rows) {
    if (!row.ok) {
      err << "warning: c = " << FormatNumber(row.c) << " failed: " << row.error
          << "\n";
    }
  }
  std::ostringstream csv;
  WriteSweepCsv(rows, csv);
  Emit(out, o.out_path, csv.str());
  return 0;
}

int RunOracle(const Options& o, std::ostream& out) {
  Scenario s = LoadScenarioFile(o.scenario);
  ParticipationProfile k(ParseCounts(o.profile));
  OracleReport report = SimulateGeneralization(s, k, o.trials, o.seed);
  OracleVerdict verdict = CompareToFormula(report, o.tolerance);
  Emit(out, o.out_path, OracleJson(report, verdict));
  return 0;
}

}  // namespace

std::vector<int> ParseCounts(const std::string& text) {
  std::vector<int> counts;
  for (const std::string& item : SplitList(text)) {
    int value = 0;
    auto [end, ec] =
        std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw Error(ErrorCode::kUsage,
                  "expected a comma-separated list of integers, got \"" +
                      text + "\"");
    }
    counts.push_back(value);
  }
  if (counts.empty()) {
    throw Error(ErrorCode::kUsage, "empty count list");
  }
  return counts;
}

std::vector<double> ParseGrid(const std::string& text) {
  std::vector<double> grid;
  for (const std::string& item : SplitList(text)) {
    try {
      size_t used = 0;
      double value = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      grid.push_back(value);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kUsage,
                  "expected a comma-separated list of numbers, got \"" +
                      text + "\"");
    }
  }
  return grid;
}

int Dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Network effects and model trading in federated learning "
               "markets"};
  app.name("netfed");
  app.require_subcommand(1);
  Options o;

  auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("--scenario", o.scenario, "Scenario JSON file")
        ->required();
    sub->add_option("--out", o.out_path, "Write output here instead of stdout");
  };
  auto add_theta = [&](CLI::App* sub) {
    sub->add_option("--theta", o.theta, "Steering function variant")
        ->check(CLI::IsMember({"subtractive", "interpolated"}));
  };

  CLI::App* analyze =
      app.add_subcommand("analyze", "Network effects of a coalition");
  add_scenario(analyze);
  analyze->add_option("--profile", o.profile, "Participants per type, k1,k2,..")
      ->required();

  CLI::App* solve = app.add_subcommand("solve", "Socially efficient states");
  add_scenario(solve);
  solve->add_option("--method", o.method)
      ->check(CLI::IsMember({"brute", "structured"}));
  solve->add_option("--landscape", o.landscape,
                    "Write every social state and its welfare as CSV");

  CLI::App* quote = app.add_subcommand("quote", "Mechanism price and rewards");
  add_scenario(quote);
  quote->add_option("--profile", o.profile, "Participants per type")
      ->required();
  quote->add_option("--buyers", o.buyers, "Buyers per type (default 0)");
  quote->add_option("--mechanism", o.mechanism)
      ->check(CLI::IsMember({"semts", "modified_fl"}));
  add_theta(quote);

  CLI::App* simulate =
      app.add_subcommand("simulate", "Best-response dynamics");
  add_scenario(simulate);
  simulate->add_option("--mechanism", o.mechanism)
      ->check(CLI::IsMember({"semts", "modified_fl"}));
  simulate->add_option("--initial", o.initial)
      ->check(CLI::IsMember({"all_abstain", "random"}));
  simulate->add_option("--order", o.order, "Update order")
      ->check(CLI::IsMember({"natural", "shuffled"}));
  simulate->add_option("--seed", o.seed);
  simulate->add_option("--max-rounds", o.max_rounds,
                       "Round limit (default N*(N+1))")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--trace", o.trace_path,
                       "Write transitions as JSON lines");
  add_theta(simulate);

  CLI::App* sweep = app.add_subcommand("sweep", "Per-sample cost sweep");
  add_scenario(sweep);
  sweep->add_option("--cost-grid", o.cost_grid, "c1,c2,... strictly increasing")
      ->required();
  add_theta(sweep);

  CLI::App* oracle =
      app.add_subcommand("oracle", "Monte Carlo check of the error model");
  add_scenario(oracle);
  oracle->add_option("--profile", o.profile, "Participants per type")
      ->required();
  oracle->add_option("--trials", o.trials)->check(CLI::PositiveNumber);
  oracle->add_option("--seed", o.seed);
  oracle->add_option("--tolerance", o.tolerance, "Relative tolerance")
      ->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (analyze->parsed()) return RunAnalyze(o, out);
    if (solve->parsed()) return RunSolve(o, out);
    if (quote->parsed()) return RunQuote(o, out, err);
    if (simulate->parsed()) return RunSimulate(o, out, err);
    if (sweep->parsed()) return RunSweepCommand(o, out, err);
    if (oracle->parsed()) return RunOracle(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kUsage ? 2 : 1;
  }
  return 2;
}

int Dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return Dispatch(args, std::cout, std::cerr);
}

}  // namespace netfed::cli
