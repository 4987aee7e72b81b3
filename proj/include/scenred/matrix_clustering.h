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

// Clustering of positive definite matrix scenarios under the Loewner order.
// Guarantees use the sufficient condition lambda_max(A) <= lambda_min(B)
// implies A <= B, so they are upper bounds on the best certificate.

#ifndef SCENRED_MATRIX_CLUSTERING_H_
#define SCENRED_MATRIX_CLUSTERING_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "scenred/clustering.h"
#include "scenred/scenarios.h"

namespace scenred {

// A <= B in the PSD order: lambda_min(B - A) >= -tol * max(1, ||B - A||_F).
// Throws kDimensionMismatch and kNonSymmetric.
bool PsdLeq(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol = 1e-9);

// alpha = max_i lambda_max(Q_i) / lambda_min(R),
// beta = lambda_max(R) / min_i lambda_min(Q_i).
// Throws kSingularRepresentative unless R is positive definite.
AlphaBeta EigGuarantee(const std::vector<Eigen::MatrixXd>& cluster,
                       const Eigen::MatrixXd& representative);

struct MatrixPartition {
  int k = 0;
  std::vector<int> assignment;
  std::vector<Eigen::MatrixXd> representatives;
  std::vector<double> alpha;  // per cluster
  std::vector<double> beta;   // per cluster
  std::string method;
  std::uint64_t seed = 0;

  // max_j alpha_j * beta_j
  double guarantee() const;
  // (max_j alpha_j) * (max_j beta_j): the factor certified for the reduced
  // problem when the representatives are used as they are.
  double certified_alpha() const;
  double certified_beta() const;
  double certified_guarantee() const { return certified_alpha() * certified_beta(); }
  std::vector<std::vector<int>> Clusters() const;
};

std::string MatrixPartitionToJson(const MatrixPartition& p);

// Lloyd iterations in the Frobenius norm with mean representatives.
// Throws kInvalidK.
MatrixPartition FrobeniusKMeans(const MatrixScenarioSet& set, int k, std::uint64_t seed,
                                int max_iter = 300);

inline constexpr int kMaxExhaustiveScenarios = 12;

// Exhaustive search over partitions with representatives c_j I,
// c_j = min_{i in S_j} lambda_min(Q_i), so beta_j = 1. Throws
// kTooManyScenarios above kMaxExhaustiveScenarios and kInvalidK.
MatrixPartition OptimalMatrixPartition(const MatrixScenarioSet& set, int k);

struct MisdpConstants {
  Eigen::VectorXd m1;  // lambda_max(Q_i)
  Eigen::VectorXd m2;  // max_l lambda_max(Q_l) - lambda_min(Q_i)
};

MisdpConstants MisdpBigM(const MatrixScenarioSet& set);

// Plain-text statement of the clustering MISDP with the constants above;
// every M (1 - z) term is a scalar multiple of the identity.
std::string MisdpText(const MatrixScenarioSet& set, int k);

}  // namespace scenred

#endif  // SCENRED_MATRIX_CLUSTERING_H_
