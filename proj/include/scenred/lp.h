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

// Dense two-phase bounded-variable simplex and a best-bound branch-and-bound
// layer for problems with a handful of binary variables.

#ifndef SCENRED_LP_H_
#define SCENRED_LP_H_

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace scenred {

// Unbounded marker for variable bounds. Never replaced by a large number.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view LpStatusName(LpStatus status);

struct LinearProgram {
  Sense sense = Sense::kMinimize;
  Eigen::VectorXd cost;
  Eigen::MatrixXd a;  // num_rows x num_vars
  std::vector<Relation> relations;
  Eigen::VectorXd rhs;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<bool> binary;  // empty, or one flag per variable

  LinearProgram() = default;
  explicit LinearProgram(int num_vars, Sense s = Sense::kMinimize);

  int num_vars() const { return static_cast<int>(cost.size()); }
  int num_rows() const { return static_cast<int>(a.rows()); }
  int num_binaries() const;

  // Appends a variable and returns its index.
  int AddVariable(double c, double lo = 0.0, double hi = kInf,
                  bool is_binary = false);
  void AddRow(const Eigen::VectorXd& coeffs, Relation rel, double b);

  // Throws kInvalidProblem on inconsistent dimensions or bounds.
  void Validate() const;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  Eigen::VectorXd x;
  std::int64_t iterations = 0;
  std::int64_t nodes = 0;
};

inline constexpr int kMaxBinaries = 25;

// Ignores binary flags.
LpSolution SolveLp(const LinearProgram& p);

// Exact over binary assignments; throws kTooManyBinaries above kMaxBinaries.
LpSolution SolveMilp(const LinearProgram& p);

// Largest constraint/bound violation of x, relative to max(1, |rhs|, |bound|).
double MaxViolation(const LinearProgram& p, const Eigen::VectorXd& x);

}  // namespace scenred

#endif  // SCENRED_LP_H_
