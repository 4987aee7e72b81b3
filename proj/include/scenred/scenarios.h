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

// Vector and matrix scenario sets. Every vector scenario is strictly
// positive and every matrix scenario is symmetric positive definite; both
// are enforced at construction, never repaired.

#ifndef SCENRED_SCENARIOS_H_
#define SCENRED_SCENARIOS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace scenred {

// Recorded in reports so that the perturbation scheme is explicit.
inline constexpr std::string_view kPerturbationScheme = "componentwise";

struct Violation {
  int scenario = 0;
  int component = 0;
  double value = 0.0;
};

// First non-positive entry in scan order, if any.
std::optional<Violation> Validate(const std::vector<Eigen::VectorXd>& scenarios);

class ScenarioSet {
 public:
  // Throws kValidationError (empty set or non-positive entry) or
  // kDimensionMismatch.
  explicit ScenarioSet(std::vector<Eigen::VectorXd> scenarios,
                       std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(scenarios_.size()); }
  int dimension() const { return static_cast<int>(scenarios_.front().size()); }
  const Eigen::VectorXd& operator[](int i) const { return scenarios_[i]; }
  const std::vector<Eigen::VectorXd>& scenarios() const { return scenarios_; }
  const std::vector<std::string>& labels() const { return labels_; }

  // One scenario per row.
  Eigen::MatrixXd AsMatrix() const;
  Eigen::VectorXd ComponentMin() const;
  Eigen::VectorXd ComponentMax() const;

  ScenarioSet Subset(const std::vector<int>& indices) const;

 private:
  std::vector<Eigen::VectorXd> scenarios_;
  std::vector<std::string> labels_;
};

struct MatrixViolation {
  int scenario = 0;
  std::string reason;
};

std::optional<MatrixViolation> ValidateMatrices(
    const std::vector<Eigen::MatrixXd>& scenarios);

class MatrixScenarioSet {
 public:
  // Throws kValidationError or kDimensionMismatch.
  explicit MatrixScenarioSet(std::vector<Eigen::MatrixXd> scenarios);

  int size() const { return static_cast<int>(scenarios_.size()); }
  int dimension() const { return static_cast<int>(scenarios_.front().rows()); }
  const Eigen::MatrixXd& operator[](int i) const { return scenarios_[i]; }
  const std::vector<Eigen::MatrixXd>& scenarios() const { return scenarios_; }

  // Ascending eigenvalues, cached at construction.
  double lambda_min(int i) const { return lambda_min_[i]; }
  double lambda_max(int i) const { return lambda_max_[i]; }

 private:
  std::vector<Eigen::MatrixXd> scenarios_;
  std::vector<double> lambda_min_;
  std::vector<double> lambda_max_;
};

struct PerturbationSpec {
  Eigen::VectorXd base;
  double s_inc = 0.5;
  int count = 1;
  std::uint64_t seed = 0;
};

// Each component k of each scenario is drawn independently and uniformly
// from [(1 - s_inc) base_k, (1 + s_inc) base_k]. Requires base > 0,
// 0 <= s_inc < 1 and count >= 1; throws kInvalidSpec otherwise.
ScenarioSet GeneratePerturbed(const PerturbationSpec& spec);

// Random SPD base matrix B (n x n) and count scenarios D_i B D_i with D_i
// diagonal, entries uniform in [1 - s_inc, 1 + s_inc].
MatrixScenarioSet GeneratePerturbedCovariances(int n, int count, double s_inc,
                                               std::uint64_t seed);

// Files. The extension (.csv or .json) selects the format. Parse failures
// throw kParseError with line and column; invalid values throw
// kValidationError.
ScenarioSet LoadScenarioSet(const std::string& path);
void SaveScenarioSet(const ScenarioSet& set, const std::string& path);
MatrixScenarioSet LoadMatrixScenarioSet(const std::string& path);
void SaveMatrixScenarioSet(const MatrixScenarioSet& set, const std::string& path);

ScenarioSet ParseScenarioCsv(std::string_view text);
std::string ScenarioSetToCsv(const ScenarioSet& set);
ScenarioSet ParseScenarioJson(std::string_view text);
std::string ScenarioSetToJson(const ScenarioSet& set);
MatrixScenarioSet ParseMatrixJson(std::string_view text);
std::string MatrixSetToJson(const MatrixScenarioSet& set);

// Shortest decimal string that parses back to exactly `value`.
std::string FormatDouble(double value);

}  // namespace scenred

#endif  // SCENRED_SCENARIOS_H_
