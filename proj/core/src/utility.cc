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

#include "netfed/utility.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "netfed/error.h"

namespace netfed {
namespace {

constexpr double kFiniteDifferenceStep = 1e-5;
constexpr double kConditionRelTolerance = 1e-9;

double Interpolate(const std::vector<TablePoint>& points, double eps) {
  if (eps <= points.front().eps) return points.front().utility;
  if (eps >= points.back().eps) return points.back().utility;
  auto hi = std::upper_bound(
      points.begin(), points.end(), eps,
      [](double e, const TablePoint& p) { return e < p.eps; });
  auto lo = hi - 1;
  double t = (eps - lo->eps) / (hi->eps - lo->eps);
  return lo->utility + t * (hi->utility - lo->utility);
}

}  // namespace

UtilityFunction UtilityFunction::Power(double scale, double exponent) {
  UtilityFunction u;
  u.family_ = Family::kPower;
  u.scale_ = scale;
  u.exponent_ = exponent;
  return u;
}

UtilityFunction UtilityFunction::Table(std::vector<TablePoint> points) {
  UtilityFunction u;
  u.family_ = Family::kTable;
  u.points_ = std::move(points);
  return u;
}

double UtilityFunction::operator()(double eps) const {
  if (family_ == Family::kPower) return scale_ * std::pow(eps, -exponent_);
  return Interpolate(points_, eps);
}

double UtilityFunction::Derivative(double eps) const {
  if (family_ == Family::kPower) {
    return -exponent_ * scale_ * std::pow(eps, -exponent_ - 1.0);
  }
  double h = eps * kFiniteDifferenceStep;
  return ((*this)(eps + h) - (*this)(eps - h)) / (2.0 * h);
}

double UtilityFunction::SecondDerivative(double eps) const {
  if (family_ == Family::kPower) {
    return exponent_ * (exponent_ + 1.0) * scale_ *
           std::pow(eps, -exponent_ - 2.0);
  }
  double h = eps * kFiniteDifferenceStep;
  return ((*this)(eps + h) - 2.0 * (*this)(eps) + (*this)(eps - h)) / (h * h);
}

std::vector<std::string> UtilityFunction::Validate() const {
  std::vector<std::string> problems;
  if (family_ == Family::kPower) {
    if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
      problems.push_back("utility coefficient a must be positive");
    }
    if (!(exponent_ > 0.0) || !std::isfinite(exponent_)) {
      problems.push_back("utility exponent b must be positive");
    }
    return problems;
  }
  if (points_.empty()) {
    problems.push_back("utility table must have at least one point");
    return problems;
  }
  for (size_t i = 0; i < points_.size(); ++i) {
    const TablePoint& p = points_[i];
    if (!(p.eps > 0.0) || !std::isfinite(p.eps)) {
      problems.push_back("utility table eps values must be positive");
      break;
    }
    if (!(p.utility >= 0.0) || !std::isfinite(p.utility)) {
      problems.push_back("utility table values must be non-negative");
      break;
    }
    if (i > 0 && !(p.eps > points_[i - 1].eps)) {
      problems.push_back("utility table eps values must be strictly increasing");
      break;
    }
    if (i > 0 && p.utility > points_[i - 1].utility) {
      problems.push_back("utility table values must be non-increasing in eps");
      break;
    }
  }
  return problems;
}

bool UtilityFunction::operator==(const UtilityFunction& other) const {
  if (family_ != other.family_) return false;
  if (family_ == Family::kPower) {
    return scale_ == other.scale_ && exponent_ == other.exponent_;
  }
  if (points_.size() != other.points_.size()) return false;
  for (size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].eps != other.points_[i].eps ||
        points_[i].utility != other.points_[i].utility) {
      return false;
    }
  }
  return true;
}

UtilityConditionReport CheckUtilityCondition(const UtilityFunction& utility,
                                             double sigma2, double eps_lo,
                                             double eps_hi, int grid_points) {
  if (!(eps_lo > 0.0) || !(eps_hi > eps_lo)) {
    std::ostringstream msg;
    msg << "utility condition range must satisfy 0 < eps_lo < eps_hi, got ["
        << eps_lo << ", " << eps_hi << "]";
    throw Error(ErrorCode::kDomain, msg.str());
  }
  grid_points = std::max(grid_points, 2);

  UtilityConditionReport report;
  report.grid_points = grid_points;
  report.tolerance = kConditionRelTolerance;

  bool in_run = false;
  EpsRange run;
  for (int g = 0; g < grid_points; ++g) {
    double eps = g + 1 == grid_points
                     ? eps_hi
                     : eps_lo + (eps_hi - eps_lo) * g / (grid_points - 1);
    double curvature = (eps - sigma2) * utility.SecondDerivative(eps);
    double slope = 2.0 * utility.Derivative(eps);
    double scale = std::abs(curvature) + std::abs(slope);
    bool ok = curvature + slope >= -kConditionRelTolerance * scale;
    if (!ok) {
      if (!in_run) run.lo = eps;
      run.hi = eps;
      in_run = true;
    } else if (in_run) {
      report.violations.push_back(run);
      in_run = false;
    }
  }
  if (in_run) report.violations.push_back(run);
  report.satisfied = report.violations.empty();
  return report;
}

}  // namespace netfed
