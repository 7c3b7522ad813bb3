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

#ifndef NETFED_REPORT_H_
#define NETFED_REPORT_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "netfed/dynamics.h"
#include "netfed/mc_oracle.h"
#include "netfed/mechanism.h"
#include "netfed/performance.h"
#include "netfed/scenario.h"
#include "netfed/welfare.h"

namespace netfed {

// Output numbers use 12 significant digits ("%.12g").
std::string FormatNumber(double value);

// JSON documents with a fixed key order, two-space indentation and a
// trailing newline.
std::string NetworkEffectJson(const Scenario& scenario,
                              const ParticipationProfile& k,
                              const NetworkEffectReport& report);
std::string WelfareJson(const Scenario& scenario, const WelfareReport& report,
                        const FlOptimum& fl_optimum);
std::string QuoteJson(const MechanismQuote& quote, const SocialState& state,
                      double residual);
std::string DynamicsSummaryJson(const Mechanism& mechanism,
                                const DynamicsTrace& trace);
// One JSON object per line per transition.
std::string DynamicsTransitionsJsonl(const DynamicsTrace& trace);
std::string OracleJson(const OracleReport& report,
                       const OracleVerdict& verdict);

// Writes bytes verbatim (LF line endings). Throws Error(kIo).
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

}  // namespace netfed

#endif  // NETFED_REPORT_H_
