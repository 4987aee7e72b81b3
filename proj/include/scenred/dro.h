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

// Distributionally robust problems
//
//   min_{x in X} sup_{p in P} sum_k p_k f(x, s_k)
//
// with linear costs f(x, s) = s'x or portfolio variances f(w, Q) = w'Qw,
// their scenario-reduced counterparts and the comparison metrics.

#ifndef SCENRED_DRO_H_
#define SCENRED_DRO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "scenred/ambiguity.h"
#include "scenred/lp.h"
#include "scenred/scenarios.h"

namespace scenred {

enum class ObjectiveKind { kLinear, kQuadratic };

std::string_view ObjectiveKindName(ObjectiveKind kind);

// X = {x : a x (relations) rhs, lower <= x <= upper, binary flags}.
struct FeasibleSet {
  Eigen::MatrixXd a;
  std::vector<Relation> relations;
  Eigen::VectorXd rhs;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<bool> binary;  // empty, or one flag per variable

  FeasibleSet() = default;
  // n variables in [0, +inf), no rows.
  explicit FeasibleSet(int n);

  int num_vars() const { return static_cast<int>(lower.size()); }
  void AddRow(const Eigen::VectorXd& coeffs, Relation rel, double b);
  // The set as an LP with the given cost.
  LinearProgram AsProgram(const Eigen::VectorXd& cost) const;
  // Largest violation of rows, bounds or integrality.
  double MaxViolation(const Eigen::VectorXd& x) const;
};

// Markowitz data. Variables are the risky weights, preceded by the
// risk-free weight when `risk_free` is set.
struct Portfolio {
  Eigen::VectorXd mu;               // risky returns; empty means no return row
  std::optional<double> risk_free;  // mu_0
  double target = 0.0;              // R
};

class DroInstance {
 public:
  // Requires lower >= 0 (costs are positive by ScenarioSet). Throws
  // kInvalidSpec, kDimensionMismatch or kAmbiguityMismatch.
  static DroInstance Linear(ScenarioSet scenarios, FeasibleSet x, AmbiguitySet ambiguity);
  // Weights on the simplex with mu' w >= target. Requires target >= mu_0.
  static DroInstance Quadratic(MatrixScenarioSet scenarios, Portfolio portfolio,
                               AmbiguitySet ambiguity);

  ObjectiveKind kind() const { return kind_; }
  int num_scenarios() const;
  int num_vars() const { return x_.num_vars(); }
  const FeasibleSet& feasible_set() const { return x_; }
  const AmbiguitySet& ambiguity() const { return ambiguity_; }
  const ScenarioSet& costs() const { return *costs_; }
  const MatrixScenarioSet& covariances() const { return *covariances_; }
  const Portfolio& portfolio() const { return portfolio_; }
  // Index of the first risky weight (Quadratic kind).
  int risky_offset() const { return portfolio_.risk_free ? 1 : 0; }

  // f(x, s_k) for every scenario.
  Eigen::VectorXd ScenarioValues(const Eigen::VectorXd& x) const;

  // Same objective kind and X with other scenarios and ambiguity.
  DroInstance WithScenarios(const std::vector<Eigen::VectorXd>& costs,
                            AmbiguitySet ambiguity) const;
  DroInstance WithScenarios(const std::vector<Eigen::MatrixXd>& covariances,
                            AmbiguitySet ambiguity) const;
  DroInstance WithAmbiguity(AmbiguitySet ambiguity) const;

 private:
  DroInstance(ObjectiveKind kind, FeasibleSet x, AmbiguitySet ambiguity)
      : kind_(kind), x_(std::move(x)), ambiguity_(std::move(ambiguity)) {}

  ObjectiveKind kind_;
  FeasibleSet x_;
  AmbiguitySet ambiguity_;
  std::optional<ScenarioSet> costs_;
  std::optional<MatrixScenarioSet> covariances_;
  Portfolio portfolio_;
};

// Instance files. "scenarios" is either inline data or a path (relative to
// the instance file) of a scenario file.
std::string InstanceToJson(const DroInstance& instance, const std::string& scenario_ref = "");
DroInstance InstanceFromJson(std::string_view text, const std::string& base_dir = ".");
DroInstance LoadInstance(const std::string& path);

struct DroSolution {
  Eigen::VectorXd x;
  double objective = 0.0;
  double seconds = 0.0;
  std::string method;
  std::int64_t iterations = 0;
  std::int64_t nodes = 0;
  double gap = 0.0;  // upper minus lower bound at termination
};

// One LP (or MILP with binaries) in (x, z, lambda, mu). Accepts Box and
// Simplex ambiguity; the simplex is the box [0, 1]^N.
DroSolution SolveBoxDual(const DroInstance& instance);

struct CuttingPlaneOptions {
  int max_iterations = 500;
  double tolerance = 1e-6;  // relative to max(1, |value|)
};

// Kelley outer approximation of the worst-case expectation; the master is
// solved by SolveMilp when X has binaries. Throws kIterationLimit.
DroSolution SolveCuttingPlane(const DroInstance& instance,
                              const CuttingPlaneOptions& options = {});

// SolveBoxDual for Linear instances with Box or Simplex ambiguity,
// SolveCuttingPlane otherwise.
DroSolution Solve(const DroInstance& instance);

// sup_{p in P} sum_k p_k f(x, s_k). Throws kInfeasibleX unless x lies in X
// within 1e-7.
double EvaluateSolution(const DroInstance& instance, const Eigen::VectorXd& x);

enum class ReductionMethod { kOpt, kKMeans, kHyperrect };

std::string_view MethodName(ReductionMethod method);
// Throws kInvalidSpec.
ReductionMethod ParseMethod(std::string_view name);

struct ReduceOptions {
  ReductionMethod method = ReductionMethod::kOpt;
  int k = 1;
  std::uint64_t seed = 0;
  std::int64_t node_limit = 10'000'000;
  bool cutting_plane = false;  // solve both problems with SolveCuttingPlane
};

struct MetricsReport {
  int scenarios = 0;
  int k = 0;  // clusters actually used
  std::string method;
  std::uint64_t seed = 0;
  double af = 0.0;
  double tf = 0.0;
  double srf = 0.0;
  double alpha = 1.0;
  double beta = 1.0;
  double guarantee = 1.0;
  bool clustering_exact = true;  // false for heuristic partitions or a truncated search
  double original_objective = 0.0;
  double reduced_objective = 0.0;
  double evaluated = 0.0;  // reduced solution under the original ambiguity
  double bound = 0.0;      // guarantee * original objective
  bool certificate = true;
  double clustering_seconds = 0.0;
  double original_seconds = 0.0;
  double reduced_seconds = 0.0;

  std::string ToJson() const;
};

struct ReductionResult {
  MetricsReport metrics;
  DroSolution original;
  DroSolution reduced;
  std::vector<int> assignment;
};

// Clusters the scenarios, projects the ambiguity, solves both problems and
// checks evaluated <= guarantee * original + 1e-6 max(1, |bound|). A
// previously computed original solution may be passed to avoid re-solving.
ReductionResult ReduceAndSolve(const DroInstance& instance, const ReduceOptions& options,
                               const DroSolution* original = nullptr);

struct LinearInstanceSpec {
  int scenarios = 10;
  int dimension = 4;    // variables, one cost component each
  int constraints = 3;  // covering rows
  int binaries = 0;     // leading variables restricted to {0, 1}
  double s_inc = 0.5;
  int samples = 0;  // 0 selects the whole simplex
  double delta = 0.1;
  std::uint64_t seed = 0;
};

// Perturbed positive costs around a random base, covering constraints
// a x >= b with a in [0.1, 1] and b between 20% and 60% of a applied to the
// upper bounds (10, or 1 for binaries), and a box ambiguity set built from
// `samples` draws of a random distribution.
DroInstance GenerateLinearInstance(const LinearInstanceSpec& spec);

struct PortfolioInstanceSpec {
  int scenarios = 5;
  int assets = 4;
  double s_inc = 0.5;
  double risk_free = 0.01;
  int samples = 0;
  double delta = 0.1;
  std::uint64_t seed = 0;
};

DroInstance GeneratePortfolioInstance(const PortfolioInstanceSpec& spec);

}  // namespace scenred

#endif  // SCENRED_DRO_H_
