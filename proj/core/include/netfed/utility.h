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

#ifndef NETFED_UTILITY_H_
#define NETFED_UTILITY_H_

#include <string>
#include <utility>
#include <vector>

namespace netfed {

// A (generalization error, utility) sample of a tabulated utility curve.
struct TablePoint {
  double eps = 0.0;
  double utility = 0.0;
};

// Client utility of holding a trained model as a function of its
// generalization error. Two families are supported: the power law
// U(eps) = scale * eps^(-exponent) and a monotone table with linear
// interpolation between samples and constant extension past either end.
//
// Values are immutable after construction. Invariant checking is separate
// (Validate) so a scenario loader can report every violation at once.
class UtilityFunction {
 public:
  enum class Family { kPower, kTable };

  static UtilityFunction Power(double scale, double exponent);
  static UtilityFunction Table(std::vector<TablePoint> points);

  Family family() const { return family_; }
  double scale() const { return scale_; }
  double exponent() const { return exponent_; }
  const std::vector<TablePoint>& points() const { return points_; }

  // eps must be positive.
  double operator()(double eps) const;

  // Analytic for the power law; central differences with step eps * 1e-5 for
  // tables.
  double Derivative(double eps) const;
  double SecondDerivative(double eps) const;

  // Human-readable descriptions of every violated invariant; empty if valid.
  std::vector<std::string> Validate() const;

  bool operator==(const UtilityFunction& other) const;

 private:
  UtilityFunction() = default;

  Family family_ = Family::kPower;
  double scale_ = 1.0;
  double exponent_ = 1.0;
  std::vector<TablePoint> points_;
};

struct EpsRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct UtilityConditionReport {
  bool satisfied = true;
  int grid_points = 0;
  double tolerance = 0.0;
  // Maximal runs of grid points where (eps - sigma2) U'' + 2 U' < -tol.
  std::vector<EpsRange> violations;
};

// Checks (eps - sigma2) U''(eps) + 2 U'(eps) >= 0 on a uniform grid over
// [eps_lo, eps_hi]. The tolerance is relative to the magnitude of the two
// terms so that exact equality (e.g. U = 1/eps with sigma2 = 0) passes.
// Throws Error(kDomain) unless 0 < eps_lo < eps_hi.
UtilityConditionReport CheckUtilityCondition(const UtilityFunction& utility,
                                             double sigma2, double eps_lo,
                                             double eps_hi,
                                             int grid_points = 1001);

}  // namespace netfed

#endif  // NETFED_UTILITY_H_
