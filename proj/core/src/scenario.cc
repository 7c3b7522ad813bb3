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

#include "netfed/scenario.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "netfed/error.h"

namespace netfed {
namespace {

using nlohmann::json;

std::string JoinProblems(const std::vector<std::string>& problems) {
  std::string out = "invalid scenario:";
  for (const std::string& p : problems) out += "\n  - " + p;
  return out;
}

template <typename T>
T Field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorCode::kParse, where + ": missing field \"" + key + "\"");
  }
  try {
    if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) {
        if (it->is_number_float()) {
          double v = it->get<double>();
          if (std::floor(v) == v && std::abs(v) < 2e9) {
            return static_cast<T>(v);
          }
        }
        throw Error(ErrorCode::kParse,
                    where + ": field \"" + key + "\" must be an integer");
      }
      auto v = it->get<long long>();
      if (v < std::numeric_limits<T>::min() ||
          v > std::numeric_limits<T>::max()) {
        throw Error(ErrorCode::kParse,
                    where + ": field \"" + key + "\" is out of range");
      }
      return static_cast<T>(v);
    } else {
      if (!it->is_number()) {
        throw Error(ErrorCode::kParse,
                    where + ": field \"" + key + "\" must be a number");
      }
      return it->get<T>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, where + ": " + e.what());
  }
}

UtilityFunction ParseUtility(const json& u) {
  if (!u.is_object()) {
    throw Error(ErrorCode::kParse, "utility must be an object");
  }
  auto fam = u.find("family");
  if (fam == u.end() || !fam->is_string()) {
    throw Error(ErrorCode::kParse, "utility: missing string field \"family\"");
  }
  std::string family = fam->get<std::string>();
  if (family == "power") {
    return UtilityFunction::Power(Field<double>(u, "a", "utility"),
                                  Field<double>(u, "b", "utility"));
  }
  if (family == "table") {
    auto pts = u.find("points");
    if (pts == u.end() || !pts->is_array()) {
      throw Error(ErrorCode::kParse, "utility: \"points\" must be an array");
    }
    std::vector<TablePoint> points;
    for (const json& p : *pts) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
          !p[1].is_number()) {
        throw Error(ErrorCode::kParse,
                    "utility: each table point must be [eps, u]");
      }
      points.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return UtilityFunction::Table(std::move(points));
  }
  throw Error(ErrorCode::kParse,
              "utility: unknown family \"" + family + "\"");
}

}  // namespace

Scenario Scenario::Create(int dim, double gamma2, double sigma2,
                          std::vector<ClientType> types,
                          UtilityFunction utility) {
  std::vector<std::string> problems;
  if (dim < 1) problems.push_back("d must be a positive integer");
  if (!(gamma2 > 0.0) || !std::isfinite(gamma2)) {
    problems.push_back("gamma2 must be positive");
  }
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    problems.push_back("sigma2 must be non-negative");
  }
  if (types.empty()) problems.push_back("at least one client type is required");
  long long total = 0;
  for (size_t i = 0; i < types.size(); ++i) {
    const ClientType& t = types[i];
    std::string tag = "type " + std::to_string(i + 1);
    if (t.data_size < 1) problems.push_back(tag + ": D must be >= 1");
    if (t.count < 1) problems.push_back(tag + ": N must be >= 1");
    if (!(t.cost >= 0.0) || !std::isfinite(t.cost)) {
      problems.push_back(tag + ": C must be non-negative");
    }
    total += std::max(t.count, 0);
  }
  for (size_t i = 1; i < types.size(); ++i) {
    if (types[i].data_size < types[i - 1].data_size) {
      problems.push_back("types not sorted by data size");
      break;
    }
  }
  for (size_t i = 1; i < types.size(); ++i) {
    if (types[i].cost < types[i - 1].cost) {
      problems.push_back("costs not non-decreasing with data size");
      break;
    }
  }
  if (total > std::numeric_limits<int>::max()) {
    problems.push_back("total client count overflows");
  }
  for (const std::string& p : utility.Validate()) problems.push_back(p);
  if (!problems.empty()) {
    throw Error(ErrorCode::kValidation, JoinProblems(problems));
  }

  Scenario s;
  s.dim_ = dim;
  s.gamma2_ = gamma2;
  s.sigma2_ = sigma2;
  s.types_ = std::move(types);
  s.utility_ = std::move(utility);
  s.total_clients_ = static_cast<int>(total);
  return s;
}

bool Scenario::IsLowIndex(int i) const {
  return sigma2_ * types_[i].data_size <= data_scale();
}

bool Scenario::IsLowHeterogeneity() const {
  return IsLowIndex(num_types() - 1);
}

Scenario Scenario::WithPerSampleCost(double per_sample_cost) const {
  std::vector<ClientType> types = types_;
  for (ClientType& t : types) t.cost = per_sample_cost * t.data_size;
  return Create(dim_, gamma2_, sigma2_, std::move(types), utility_);
}

bool Scenario::operator==(const Scenario& other) const {
  return dim_ == other.dim_ && gamma2_ == other.gamma2_ &&
         sigma2_ == other.sigma2_ && types_ == other.types_ &&
         utility_ == other.utility_;
}

TypePartition PartitionTypes(const Scenario& scenario) {
  TypePartition part;
  for (int i = 0; i < scenario.num_types(); ++i) {
    (scenario.IsLowIndex(i) ? part.low : part.high).push_back(i);
  }
  return part;
}

Scenario LoadScenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kParse, "scenario must be a JSON object");
  }
  int dim = Field<int>(doc, "d", "scenario");
  double gamma2 = Field<double>(doc, "gamma2", "scenario");
  double sigma2 = Field<double>(doc, "sigma2", "scenario");
  auto u = doc.find("utility");
  if (u == doc.end()) {
    throw Error(ErrorCode::kParse, "scenario: missing field \"utility\"");
  }
  UtilityFunction utility = ParseUtility(*u);
  auto ts = doc.find("types");
  if (ts == doc.end() || !ts->is_array()) {
    throw Error(ErrorCode::kParse, "scenario: \"types\" must be an array");
  }
  std::vector<ClientType> types;
  for (size_t i = 0; i < ts->size(); ++i) {
    const json& t = (*ts)[i];
    std::string where = "types[" + std::to_string(i) + "]";
    if (!t.is_object()) {
      throw Error(ErrorCode::kParse, where + " must be an object");
    }
    types.push_back({Field<int>(t, "D", where), Field<double>(t, "C", where),
                     Field<int>(t, "N", where)});
  }
  return Scenario::Create(dim, gamma2, sigma2, std::move(types),
                          std::move(utility));
}

Scenario LoadScenarioFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open scenario file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return LoadScenario(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string SerializeScenario(const Scenario& scenario) {
  // Doubles are written with full round-trip precision so load(serialize(s))
  // reproduces s exactly.
  json doc = json::object();
  doc["d"] = scenario.dim();
  doc["gamma2"] = scenario.gamma2();
  doc["sigma2"] = scenario.sigma2();
  const UtilityFunction& u = scenario.utility();
  json uj = json::object();
  if (u.family() == UtilityFunction::Family::kPower) {
    uj["family"] = "power";
    uj["a"] = u.scale();
    uj["b"] = u.exponent();
  } else {
    uj["family"] = "table";
    json pts = json::array();
    for (const TablePoint& p : u.points()) pts.push_back({p.eps, p.utility});
    uj["points"] = pts;
  }
  doc["utility"] = uj;
  json types = json::array();
  for (const ClientType& t : scenario.types()) {
    json tj = json::object();
    tj["D"] = t.data_size;
    tj["C"] = t.cost;
    tj["N"] = t.count;
    types.push_back(tj);
  }
  doc["types"] = types;
  return doc.dump(2) + "\n";
}

}  // namespace netfed
