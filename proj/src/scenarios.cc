// Copyright 2026 The scenred Authors
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

#include "scenred/scenarios.h"

#include <cmath>
#include <string>
#include <utility>

#include "scenred/common.h"
#include "scenred/linalg.h"

namespace scenred {

std::optional<Violation> Validate(const std::vector<VectorXd>& scenarios) {
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    for (Eigen::Index k = 0; k < scenarios[i].size(); ++k) {
      // Written as !(x > 0) so that NaN is reported too.
      if (!(scenarios[i](k) > 0.0)) {
        return Violation{static_cast<int>(i), static_cast<int>(k), scenarios[i](k)};
      }
    }
  }
  return std::nullopt;
}

ScenarioSet::ScenarioSet(std::vector<VectorXd> scenarios,
                         std::vector<std::string> labels)
    : scenarios_(std::move(scenarios)), labels_(std::move(labels)) {
  if (scenarios_.empty()) {
    throw Error(ErrorCode::kValidationError, "scenario set is empty");
  }
  const Eigen::Index m = scenarios_.front().size();
  if (m == 0) throw Error(ErrorCode::kValidationError, "scenario dimension is 0");
  for (std::size_t i = 0; i < scenarios_.size(); ++i) {
    if (scenarios_[i].size() != m) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "scenario " + std::to_string(i) + " has dimension " +
                      std::to_string(scenarios_[i].size()) + ", expected " +
                      std::to_string(m));
    }
  }
  if (!labels_.empty() && labels_.size() != scenarios_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "label count differs from scenario count");
  }
  if (const auto v = Validate(scenarios_)) {
    throw Error(ErrorCode::kValidationError,
                "scenario " + std::to_string(v->scenario) + " component " +
                    std::to_string(v->component) + " is not strictly positive (" +
                    FormatDouble(v->value) + ")");
  }
}

MatrixXd ScenarioSet::AsMatrix() const {
  MatrixXd out(size(), dimension());
  for (int i = 0; i < size(); ++i) out.row(i) = scenarios_[i].transpose();
  return out;
}

VectorXd ScenarioSet::ComponentMin() const {
  VectorXd lo = scenarios_.front();
  for (const auto& s : scenarios_) lo = lo.cwiseMin(s);
  return lo;
}

VectorXd ScenarioSet::ComponentMax() const {
  VectorXd hi = scenarios_.front();
  for (const auto& s : scenarios_) hi = hi.cwiseMax(s);
  return hi;
}

ScenarioSet ScenarioSet::Subset(const std::vector<int>& indices) const {
  std::vector<VectorXd> out;
  std::vector<std::string> labels;
  out.reserve(indices.size());
  for (int i : indices) {
    out.push_back(scenarios_.at(i));
    if (!labels_.empty()) labels.push_back(labels_[i]);
  }
  return ScenarioSet(std::move(out), std::move(labels));
}

std::optional<MatrixViolation> ValidateMatrices(const std::vector<MatrixXd>& scenarios) {
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const MatrixXd& q = scenarios[i];
    const int idx = static_cast<int>(i);
    if (q.rows() != q.cols() || q.rows() == 0) {
      return MatrixViolation{idx, "matrix is not square"};
    }
    if (!q.allFinite()) return MatrixViolation{idx, "matrix has non-finite entries"};
    if (!IsSymmetric(q)) return MatrixViolation{idx, "matrix is not symmetric"};
    const auto eig = SymmetricEigen(q);
    const double lo = eig.values(0);
    const double hi = eig.values(eig.values.size() - 1);
    if (!(hi > 0.0) || !(lo > 1e-12 * hi)) {
      return MatrixViolation{idx, "matrix is not positive definite (lambda_min " +
                                      FormatDouble(lo) + ", lambda_max " +
                                      FormatDouble(hi) + ")"};
    }
  }
  return std::nullopt;
}

MatrixScenarioSet::MatrixScenarioSet(std::vector<MatrixXd> scenarios)
    : scenarios_(std::move(scenarios)) {
  if (scenarios_.empty()) {
    throw Error(ErrorCode::kValidationError, "matrix scenario set is empty");
  }
  const Eigen::Index n = scenarios_.front().rows();
  for (std::size_t i = 0; i < scenarios_.size(); ++i) {
    if (scenarios_[i].rows() != n || scenarios_[i].cols() != n) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "matrix scenario " + std::to_string(i) + " is not " +
                      std::to_string(n) + "x" + std::to_string(n));
    }
  }
  if (const auto v = ValidateMatrices(scenarios_)) {
    throw Error(ErrorCode::kValidationError,
                "matrix scenario " + std::to_string(v->scenario) + ": " + v->reason);
  }
  for (const auto& q : scenarios_) {
    const auto eig = SymmetricEigen(q);
    lambda_min_.push_back(eig.values(0));
    lambda_max_.push_back(eig.values(eig.values.size() - 1));
  }
}

ScenarioSet GeneratePerturbed(const PerturbationSpec& spec) {
  if (spec.base.size() == 0 || !(spec.base.array() > 0.0).all()) {
    throw Error(ErrorCode::kInvalidSpec, "base vector must be nonempty and strictly positive");
  }
  if (!(spec.s_inc >= 0.0 && spec.s_inc < 1.0)) {
    throw Error(ErrorCode::kInvalidSpec, "s_inc must lie in [0, 1)");
  }
  if (spec.count < 1) throw Error(ErrorCode::kInvalidSpec, "count must be >= 1");
  Rng rng(spec.seed);
  std::vector<VectorXd> out;
  out.reserve(spec.count);
  for (int i = 0; i < spec.count; ++i) {
    VectorXd s(spec.base.size());
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      const double lo = (1.0 - spec.s_inc) * spec.base(k);
      const double hi = (1.0 + spec.s_inc) * spec.base(k);
      s(k) = std::min(hi, std::max(lo, rng.Uniform(lo, hi)));
    }
    out.push_back(std::move(s));
  }
  return ScenarioSet(std::move(out));
}

MatrixScenarioSet GeneratePerturbedCovariances(int n, int count, double s_inc,
                                               std::uint64_t seed) {
  if (n < 1 || count < 1 || !(s_inc >= 0.0 && s_inc < 1.0)) {
    throw Error(ErrorCode::kInvalidSpec, "need n >= 1, count >= 1, 0 <= s_inc < 1");
  }
  Rng rng(seed);
  MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.Uniform(-1.0, 1.0);
  MatrixXd base = g * g.transpose() / n;
  base.diagonal().array() += 0.1;
  std::vector<MatrixXd> out;
  for (int i = 0; i < count; ++i) {
    VectorXd d(n);
    for (int k = 0; k < n; ++k) d(k) = rng.Uniform(1.0 - s_inc, 1.0 + s_inc);
    MatrixXd q = d.asDiagonal() * base * d.asDiagonal();
    q = (q + q.transpose()) / 2.0;
    out.push_back(std::move(q));
  }
  return MatrixScenarioSet(std::move(out));
}

}  // namespace scenred
