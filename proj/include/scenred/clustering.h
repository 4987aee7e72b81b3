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

// Partitioning of vector scenario sets. A partition with representatives
// s~_j is certified by the smallest alpha, beta with s <= alpha * s~_j and
// s~_j <= beta * s for every member s of cluster j; alpha * beta is the
// approximation guarantee of the reduced problem.

#ifndef SCENRED_CLUSTERING_H_
#define SCENRED_CLUSTERING_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "scenred/common.h"
#include "scenred/scenarios.h"

namespace scenred {

struct Partition {
  int k = 0;
  std::vector<int> assignment;  // scenario index -> cluster index in [0, k)
  std::vector<Eigen::VectorXd> representatives;
  double alpha = 1.0;
  double beta = 1.0;
  std::string method;
  std::uint64_t seed = 0;

  double guarantee() const { return alpha * beta; }
  // Member indices per cluster, ascending.
  std::vector<std::vector<int>> Clusters() const;
};

std::string PartitionToJson(const Partition& p);
Partition PartitionFromJson(std::string_view text);

struct AlphaBeta {
  double alpha = 1.0;
  double beta = 1.0;
  double product() const { return alpha * beta; }
};

// K = representatives.size(). Throws kEmptyCluster if some cluster in
// [0, K) has no member and kDimensionMismatch on inconsistent sizes.
AlphaBeta GuaranteeOf(const ScenarioSet& set, const std::vector<int>& assignment,
                      const std::vector<Eigen::VectorXd>& representatives);

// max_k (max_i s_ik) / (min_i s_ik) over the given members.
double SpreadRatio(const ScenarioSet& set, const std::vector<int>& members);

// Componentwise minimum of the cluster.
Eigen::VectorXd OptimalRepresentative(const std::vector<Eigen::VectorXd>& cluster);

// Projection of the cluster mean onto the segment from the componentwise
// minimum to the componentwise maximum, with the segment parameter clamped
// to [0, 1].
Eigen::VectorXd DiagonalRepresentative(const std::vector<Eigen::VectorXd>& cluster);

struct OptimalPartitionOptions {
  std::int64_t node_limit = 10'000'000;
  // Optional assignment used as the initial incumbent.
  std::vector<int> warm_start;
};

// Thrown by OptimalPartition when the node limit is hit. Carries the best
// partition found and a valid lower bound on the optimal guarantee.
class SearchBudgetExceeded : public Error {
 public:
  SearchBudgetExceeded(Partition incumbent, double lower_bound, std::int64_t nodes);

  const Partition& incumbent() const { return incumbent_; }
  double lower_bound() const { return lower_bound_; }
  std::int64_t nodes() const { return nodes_; }

 private:
  Partition incumbent_;
  double lower_bound_;
  std::int64_t nodes_;
};

// Exact minimizer of alpha * beta over all partitions into K nonempty
// clusters. Representatives are cluster minima, so beta = 1 and alpha is
// the largest within-cluster max/min ratio. Throws kInvalidK.
Partition OptimalPartition(const ScenarioSet& set, int k,
                           const OptimalPartitionOptions& options = {});

struct KMeansOptions {
  std::uint64_t seed = 0;
  int max_iter = 300;
  // Divide every component by its mean over the set before clustering.
  bool normalize = false;
};

// Lloyd iterations with Euclidean distance; representatives are diagonal
// projections. Throws kInvalidK.
Partition KMeansPartition(const ScenarioSet& set, int k, const KMeansOptions& options = {});

struct BoxSplit {
  // breakpoints[i] holds the r_i - 1 interior breakpoints of axis i.
  std::vector<std::vector<double>> breakpoints;
  // max_i (hi_i / lo_i)^(1 / r_i)
  double bound = 1.0;
  // Largest ratio of consecutive breakpoints, i.e. the guarantee of the
  // cell partition over the whole box.
  double realized = 1.0;
};

// Geometric splitting of the box [lo, hi]. Throws kInvalidSplitCounts.
BoxSplit SplitBox(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                  const std::vector<int>& splits);

struct HyperrectResult {
  Partition partition;
  BoxSplit split;
};

// Partitions the set by the cells of SplitBox over its bounding box; empty
// cells are dropped, so partition.k may be smaller than prod(splits).
// Representatives are the cells' lower corners.
HyperrectResult HyperrectPartition(const ScenarioSet& set, const std::vector<int>& splits);

// Split counts with product K minimizing the a-priori bound over [lo, hi].
std::vector<int> SplitsForK(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, int k);

struct BigM {
  Eigen::MatrixXd covering;  // (|S| x m) constants for t s_i <= s~_j + M (1 - z_ij)
  Eigen::MatrixXd lower;     // (|S| x m) constants for s~_j <= s_i + M (1 - z_ij)
};

BigM BigMConstants(const ScenarioSet& set);

// The clustering MIP in CPLEX LP format, with the constants above.
std::string ClusteringMipText(const ScenarioSet& set, int k);

}  // namespace scenred

#endif  // SCENRED_CLUSTERING_H_
