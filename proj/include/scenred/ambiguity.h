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

// Ambiguity sets over the probabilities of finitely many atoms, their images
// under cluster aggregation and worst-case expectation oracles.

#ifndef SCENRED_AMBIGUITY_H_
#define SCENRED_AMBIGUITY_H_

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "scenred/common.h"

namespace scenred {

struct SimplexSet {
  int atoms = 1;
};

// {l <= p <= u, sum(p) = 1}
struct BoxSet {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

// {(p - center)' sigma^-1 (p - center) <= radius^2, sum(p) = 1}
struct EllipsoidSet {
  Eigen::VectorXd center;
  Eigen::MatrixXd sigma;
  double radius = 0.0;
};

class AmbiguitySet {
 public:
  using Variant = std::variant<SimplexSet, BoxSet, EllipsoidSet>;

  static AmbiguitySet Simplex(int atoms);
  // Requires 0 <= lower <= upper <= 1; throws kInvalidSpec.
  static AmbiguitySet Box(Eigen::VectorXd lower, Eigen::VectorXd upper);
  // Requires sum(center) = 1, sigma SPD and radius > 0; throws kInvalidSpec
  // or kNotPositiveDefinite.
  static AmbiguitySet Ellipsoid(Eigen::VectorXd center, Eigen::MatrixXd sigma, double radius);
  // Singleton {p}, as a degenerate box.
  static AmbiguitySet Point(const Eigen::VectorXd& p);

  int atoms() const;
  std::string_view kind() const;
  const Variant& variant() const { return variant_; }
  bool is_simplex() const { return std::holds_alternative<SimplexSet>(variant_); }
  bool is_box() const { return std::holds_alternative<BoxSet>(variant_); }
  bool is_ellipsoid() const { return std::holds_alternative<EllipsoidSet>(variant_); }
  const BoxSet& box() const { return std::get<BoxSet>(variant_); }
  const EllipsoidSet& ellipsoid() const { return std::get<EllipsoidSet>(variant_); }

  // Membership up to an absolute tolerance.
  bool Contains(const Eigen::VectorXd& p, double tol = 1e-9) const;

 private:
  explicit AmbiguitySet(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

std::string AmbiguityToJson(const AmbiguitySet& set);
AmbiguitySet AmbiguityFromJson(std::string_view text);

// K x N matrix with A(assignment[i], i) = 1. Throws kEmptyCluster.
Eigen::MatrixXd AggregationMatrix(const std::vector<int>& assignment, int k);

// Standard normal quantile: Phi(NormalQuantile(q)) = q for q in (0, 1).
double NormalQuantile(double q);

struct SampledBox {
  AmbiguitySet set;
  double half_width = 0.0;
  bool clipped = false;  // some bound was moved into [0, 1]
};

// Confidence box p_hat -/+ z_{delta/2} / (2 sqrt(samples)), clipped into
// [0, 1]; samples = 0 gives the whole simplex. Throws kInvalidDelta.
SampledBox FromSamples(const Eigen::VectorXd& p_hat, int samples, double delta);

// Empirical frequencies of `samples` draws from p (returns p if samples = 0).
Eigen::VectorXd SampleEmpirical(const Eigen::VectorXd& p, int samples, Rng& rng);

// Uniformly random probability vector (flat Dirichlet).
Eigen::VectorXd RandomDistribution(int atoms, Rng& rng);

// Image of the set under p -> A p. Throws kRankDeficient when A sigma A' is
// not positive definite and kDimensionMismatch on size errors.
AmbiguitySet Project(const AmbiguitySet& set, const Eigen::MatrixXd& a);

struct WorstCase {
  double value = 0.0;
  Eigen::VectorXd p;
};

// sup over p in the set of f'p. Throws kInfeasibleBox, kBoundsViolated,
// kDimensionMismatch.
WorstCase WorstCaseExpectation(const AmbiguitySet& set, const Eigen::VectorXd& f);

// sup of f_reduced' (A p) over p in a Simplex or Box set, solved as one LP
// in both p and the aggregated vector.
WorstCase LiftedWorstCase(const AmbiguitySet& set, const Eigen::MatrixXd& a,
                          const Eigen::VectorXd& f_reduced);

}  // namespace scenred

#endif  // SCENRED_AMBIGUITY_H_
