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

#ifndef NETFED_SCENARIO_H_
#define NETFED_SCENARIO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "netfed/utility.h"

namespace netfed {

// One class of clients sharing a data size and a participation cost.
struct ClientType {
  int data_size = 1;   // D_i, samples
  double cost = 0.0;   // C_i, utility units
  int count = 1;       // N_i

  bool operator==(const ClientType&) const = default;
};

// Type indices split by the data-size threshold d * gamma2 / sigma2.
// Indices are 0-based positions into Scenario::types().
struct TypePartition {
  std::vector<int> low;   // D_i <= d gamma2 / sigma2
  std::vector<int> high;  // D_i >  d gamma2 / sigma2
};

// A validated market instance. Construct through Scenario::Create or one of
// the loaders; all invariants hold for any live object.
class Scenario {
 public:
  // Throws Error(kValidation) naming every violated invariant.
  static Scenario Create(int dim, double gamma2, double sigma2,
                         std::vector<ClientType> types,
                         UtilityFunction utility);

  int dim() const { return dim_; }
  double gamma2() const { return gamma2_; }
  double sigma2() const { return sigma2_; }
  const std::vector<ClientType>& types() const { return types_; }
  const ClientType& type(int i) const { return types_[i]; }
  const UtilityFunction& utility() const { return utility_; }

  int num_types() const { return static_cast<int>(types_.size()); }
  int total_clients() const { return total_clients_; }

  // d * gamma2, the data-variance scale in the error model.
  double data_scale() const { return dim_ * gamma2_; }

  // True iff type i belongs to I_L. Evaluated as sigma2 * D_i <= d gamma2 so
  // that sigma2 = 0 needs no special case.
  bool IsLowIndex(int i) const;

  // sigma2 <= d gamma2 / D_I, equivalently I_H is empty.
  bool IsLowHeterogeneity() const;

  // Same market with C_i := per_sample_cost * D_i.
  Scenario WithPerSampleCost(double per_sample_cost) const;

  bool operator==(const Scenario&) const;

 private:
  Scenario() = default;

  int dim_ = 1;
  double gamma2_ = 1.0;
  double sigma2_ = 0.0;
  std::vector<ClientType> types_;
  UtilityFunction utility_ = UtilityFunction::Power(1.0, 1.0);
  int total_clients_ = 0;
};

TypePartition PartitionTypes(const Scenario& scenario);

// JSON scenario documents:
//   {"d": int, "gamma2": float, "sigma2": float,
//    "utility": {"family": "power", "a": float, "b": float}
//             | {"family": "table", "points": [[eps, u], ...]},
//    "types": [{"D": int, "C": float, "N": int}, ...]}
// Throws Error(kParse) for malformed documents and Error(kValidation) for
// documents that parse but violate an invariant.
Scenario LoadScenario(std::string_view json_text);
Scenario LoadScenarioFile(const std::filesystem::path& path);

// Inverse of LoadScenario; doubles are written with round-trip precision.
std::string SerializeScenario(const Scenario& scenario);

}  // namespace netfed

#endif  // NETFED_SCENARIO_H_
