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

#include "scenred/clustering.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace scenred {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using nlohmann::json;

constexpr double kInfinity = std::numeric_limits<double>::infinity();

void CheckK(int k, int n) {
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidK, "K = " + std::to_string(k) + " outside [1, " +
                                          std::to_string(n) + "]");
  }
}

// Relabels clusters in order of first appearance so that equal partitions
// always serialize identically.
std::vector<int> Canonical(const std::vector<int>& assignment) {
  std::map<int, int> relabel;
  std::vector<int> out(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    auto it = relabel.find(assignment[i]);
    if (it == relabel.end()) it = relabel.emplace(assignment[i], relabel.size()).first;
    out[i] = it->second;
  }
  return out;
}

std::vector<std::vector<VectorXd>> Members(const ScenarioSet& set,
                                           const std::vector<int>& assignment, int k) {
  std::vector<std::vector<VectorXd>> members(k);
  for (int i = 0; i < set.size(); ++i) members[assignment[i]].push_back(set[i]);
  return members;
}

// Cluster-minimum representatives plus certified (alpha, beta).
Partition MinimumPartition(const ScenarioSet& set, const std::vector<int>& assignment,
                           std::string method) {
  Partition p;
  p.assignment = Canonical(assignment);
  p.k = 1 + *std::max_element(p.assignment.begin(), p.assignment.end());
  for (const auto& cluster : Members(set, p.assignment, p.k)) {
    p.representatives.push_back(OptimalRepresentative(cluster));
  }
  const AlphaBeta ab = GuaranteeOf(set, p.assignment, p.representatives);
  p.alpha = ab.alpha;
  p.beta = ab.beta;
  p.method = std::move(method);
  return p;
}

// Value of the partition under minimum representatives: the largest
// within-cluster max/min ratio.
double PartitionValue(const ScenarioSet& set, const std::vector<int>& assignment, int k) {
  std::vector<std::vector<int>> clusters(k);
  for (int i = 0; i < set.size(); ++i) clusters[assignment[i]].push_back(i);
  double value = 0.0;
  for (const auto& c : clusters) {
    if (c.empty()) return kInfinity;
    value = std::max(value, SpreadRatio(set, c));
  }
  return value;
}

double PairRatio(const VectorXd& a, const VectorXd& b) {
  double r = 1.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    r = std::max(r, std::max(a(k), b(k)) / std::min(a(k), b(k)));
  }
  return r;
}

// Farthest-first traversal under the pairwise ratio, starting from `first`.
std::vector<int> FarthestFirst(const MatrixXd& ratio, int first, int count) {
  const int n = static_cast<int>(ratio.rows());
  std::vector<int> picked{first};
  std::vector<double> closest(n);
  for (int i = 0; i < n; ++i) closest[i] = ratio(first, i);
  while (static_cast<int>(picked.size()) < count) {
    int next = -1;
    for (int i = 0; i < n; ++i) {
      if (std::find(picked.begin(), picked.end(), i) != picked.end()) continue;
      if (next < 0 || closest[i] > closest[next]) next = i;
    }
    picked.push_back(next);
    for (int i = 0; i < n; ++i) closest[i] = std::min(closest[i], ratio(next, i));
  }
  return picked;
}

class PartitionSearch {
 public:
  PartitionSearch(const ScenarioSet& set, int k, std::int64_t node_limit)
      : set_(set), n_(set.size()), m_(set.dimension()), k_(k), node_limit_(node_limit) {
    ratio_.resize(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) ratio_(i, j) = PairRatio(set[i], set[j]);
    std::vector<double> spread(n_);
    for (int i = 0; i < n_; ++i) spread[i] = ratio_.row(i).maxCoeff();
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return spread[a] > spread[b]; });
    s_.resize(n_, m_);
    for (int p = 0; p < n_; ++p) s_.row(p) = set[order_[p]].transpose();
    cmin_.resize(k_, m_);
    cmax_.resize(k_, m_);
    value_.assign(k_, 1.0);
    position_cluster_.assign(n_, -1);
  }

  const MatrixXd& ratio() const { return ratio_; }
  const std::vector<int>& order() const { return order_; }

  void Offer(const std::vector<int>& assignment) {
    const double v = PartitionValue(set_, assignment, k_);
    if (v < best_) {
      best_ = v;
      best_assignment_ = assignment;
    }
  }

  // Farthest-first centers, then every other scenario (in search order)
  // joins the cluster whose value grows least.
  void Greedy() {
    const std::vector<int> centers = FarthestFirst(ratio_, order_[0], k_);
    std::vector<int> assignment(n_, -1);
    MatrixXd lo(k_, m_), hi(k_, m_);
    for (int j = 0; j < k_; ++j) {
      assignment[centers[j]] = j;
      lo.row(j) = set_[centers[j]].transpose();
      hi.row(j) = lo.row(j);
    }
    for (int i : order_) {
      if (assignment[i] >= 0) continue;
      int best_j = 0;
      double best_v = kInfinity;
      for (int j = 0; j < k_; ++j) {
        double v = 1.0;
        for (int c = 0; c < m_; ++c) {
          v = std::max(v, std::max(hi(j, c), set_[i](c)) / std::min(lo(j, c), set_[i](c)));
        }
        if (v < best_v) {
          best_v = v;
          best_j = j;
        }
      }
      assignment[i] = best_j;
      lo.row(best_j) = lo.row(best_j).cwiseMin(set_[i].transpose());
      hi.row(best_j) = hi.row(best_j).cwiseMax(set_[i].transpose());
    }
    Offer(assignment);
  }

  // Returns false when the node limit was hit.
  bool Run() {
    try {
      Dfs(0, 0, 1.0);
    } catch (const BudgetHit&) {
      return false;
    }
    return true;
  }

  double best() const { return best_; }
  const std::vector<int>& best_assignment() const { return best_assignment_; }
  std::int64_t nodes() const { return nodes_; }

 private:
  struct BudgetHit {};

  double MergedValue(int j, int p) const {
    double v = value_[j];
    for (int c = 0; c < m_; ++c) {
      v = std::max(v, std::max(cmax_(j, c), s_(p, c)) / std::min(cmin_(j, c), s_(p, c)));
    }
    return v;
  }

  // True if the remaining positions (> d) can still be placed so that every
  // cluster value stays below the incumbent.
  bool ForwardCheck(int d, int used) {
    forced_.clear();
    for (int q = d + 1; q < n_; ++q) {
      bool fits = false;
      for (int j = 0; j < used && !fits; ++j) fits = MergedValue(j, q) < best_;
      if (fits) continue;
      if (used == k_) return false;
      forced_.push_back(q);
    }
    // Points that fit nowhere need fresh clusters; pairwise incompatible
    // ones need distinct fresh clusters.
    clique_.clear();
    for (int q : forced_) {
      bool independent = true;
      for (int c : clique_) {
        if (ratio_(order_[q], order_[c]) < best_) {
          independent = false;
          break;
        }
      }
      if (independent) {
        clique_.push_back(q);
        if (static_cast<int>(clique_.size()) > k_ - used) return false;
      }
    }
    return true;
  }

  void Dfs(int d, int used, double current) {
    if (++nodes_ > node_limit_) throw BudgetHit{};
    if (d == n_) {
      if (used == k_ && current < best_) {
        best_ = current;
        best_assignment_.assign(n_, -1);
        for (int p = 0; p < n_; ++p) best_assignment_[order_[p]] = position_cluster_[p];
      }
      return;
    }
    const bool must_open = (n_ - d) == (k_ - used);
    std::vector<std::pair<double, int>> options;
    if (!must_open) {
      for (int j = 0; j < used; ++j) {
        const double v = std::max(current, MergedValue(j, d));
        if (v < best_) options.emplace_back(v, j);
      }
    }
    if (used < k_ && current < best_) options.emplace_back(current, used);
    std::stable_sort(options.begin(), options.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    for (const auto& [v, j] : options) {
      if (!(v < best_)) break;
      const Eigen::RowVectorXd old_min = j < used ? Eigen::RowVectorXd(cmin_.row(j))
                                                  : Eigen::RowVectorXd(s_.row(d));
      const Eigen::RowVectorXd old_max = j < used ? Eigen::RowVectorXd(cmax_.row(j))
                                                  : Eigen::RowVectorXd(s_.row(d));
      const double old_value = value_[j];
      if (j < used) {
        value_[j] = MergedValue(j, d);
        cmin_.row(j) = cmin_.row(j).cwiseMin(s_.row(d));
        cmax_.row(j) = cmax_.row(j).cwiseMax(s_.row(d));
      } else {
        cmin_.row(j) = s_.row(d);
        cmax_.row(j) = s_.row(d);
        value_[j] = 1.0;
      }
      position_cluster_[d] = j;
      const int next_used = j < used ? used : used + 1;
      if (ForwardCheck(d, next_used)) Dfs(d + 1, next_used, v);
      cmin_.row(j) = old_min;
      cmax_.row(j) = old_max;
      value_[j] = old_value;
      position_cluster_[d] = -1;
    }
  }

  const ScenarioSet& set_;
  const int n_;
  const int m_;
  const int k_;
  const std::int64_t node_limit_;
  MatrixXd ratio_;
  std::vector<int> order_;
  MatrixXd s_;  // scenarios in search order
  MatrixXd cmin_, cmax_;
  std::vector<double> value_;
  std::vector<int> position_cluster_;
  std::vector<int> forced_, clique_;
  double best_ = kInfinity;
  std::vector<int> best_assignment_;
  std::int64_t nodes_ = 0;
};

double SquaredDistance(const VectorXd& a, const VectorXd& b) {
  return (a - b).squaredNorm();
}

}  // namespace

std::vector<std::vector<int>> Partition::Clusters() const {
  std::vector<std::vector<int>> out(k);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    out[assignment[i]].push_back(static_cast<int>(i));
  }
  return out;
}

std::string PartitionToJson(const Partition& p) {
  json doc;
  doc["K"] = p.k;
  doc["assignment"] = p.assignment;
  json reps = json::array();
  for (const auto& r : p.representatives) {
    reps.push_back(std::vector<double>(r.data(), r.data() + r.size()));
  }
  doc["representatives"] = std::move(reps);
  doc["alpha"] = p.alpha;
  doc["beta"] = p.beta;
  doc["guarantee"] = p.guarantee();
  doc["method"] = p.method;
  doc["seed"] = p.seed;
  return doc.dump(2) + "\n";
}

Partition PartitionFromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
    Partition p;
    p.k = doc.at("K").get<int>();
    p.assignment = doc.at("assignment").get<std::vector<int>>();
    for (const auto& r : doc.at("representatives")) {
      const auto v = r.get<std::vector<double>>();
      p.representatives.push_back(Eigen::Map<const VectorXd>(v.data(), v.size()));
    }
    p.alpha = doc.at("alpha").get<double>();
    p.beta = doc.at("beta").get<double>();
    p.method = doc.value("method", "");
    p.seed = doc.value("seed", std::uint64_t{0});
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("partition JSON: ") + e.what());
  }
}

AlphaBeta GuaranteeOf(const ScenarioSet& set, const std::vector<int>& assignment,
                      const std::vector<VectorXd>& representatives) {
  const int k = static_cast<int>(representatives.size());
  if (static_cast<int>(assignment.size()) != set.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "assignment size differs from scenario count");
  }
  std::vector<int> count(k, 0);
  for (int a : assignment) {
    if (a < 0 || a >= k) {
      throw Error(ErrorCode::kDimensionMismatch, "cluster index outside [0, K)");
    }
    ++count[a];
  }
  for (int j = 0; j < k; ++j) {
    if (count[j] == 0) {
      throw Error(ErrorCode::kEmptyCluster, "cluster " + std::to_string(j) + " is empty");
    }
    if (representatives[j].size() != set.dimension()) {
      throw Error(ErrorCode::kDimensionMismatch, "representative dimension");
    }
    if (!(representatives[j].array() > 0.0).all()) {
      throw Error(ErrorCode::kValidationError,
                  "representative " + std::to_string(j) + " is not strictly positive");
    }
  }
  const int m = set.dimension();
  MatrixXd lo = MatrixXd::Constant(k, m, kInfinity);
  MatrixXd hi = MatrixXd::Zero(k, m);
  for (int i = 0; i < set.size(); ++i) {
    lo.row(assignment[i]) = lo.row(assignment[i]).cwiseMin(set[i].transpose());
    hi.row(assignment[i]) = hi.row(assignment[i]).cwiseMax(set[i].transpose());
  }
  AlphaBeta out{0.0, 0.0};
  for (int j = 0; j < k; ++j) {
    for (int c = 0; c < m; ++c) {
      out.alpha = std::max(out.alpha, hi(j, c) / representatives[j](c));
      out.beta = std::max(out.beta, representatives[j](c) / lo(j, c));
    }
  }
  return out;
}

double SpreadRatio(const ScenarioSet& set, const std::vector<int>& members) {
  if (members.empty()) throw Error(ErrorCode::kEmptyCluster, "no members");
  VectorXd lo = set[members[0]];
  VectorXd hi = lo;
  for (int i : members) {
    lo = lo.cwiseMin(set[i]);
    hi = hi.cwiseMax(set[i]);
  }
  double r = 0.0;
  for (int c = 0; c < set.dimension(); ++c) r = std::max(r, hi(c) / lo(c));
  return r;
}

VectorXd OptimalRepresentative(const std::vector<VectorXd>& cluster) {
  if (cluster.empty()) throw Error(ErrorCode::kEmptyCluster, "empty cluster");
  VectorXd lo = cluster.front();
  for (const auto& s : cluster) lo = lo.cwiseMin(s);
  return lo;
}

VectorXd DiagonalRepresentative(const std::vector<VectorXd>& cluster) {
  if (cluster.empty()) throw Error(ErrorCode::kEmptyCluster, "empty cluster");
  VectorXd lo = cluster.front();
  VectorXd hi = cluster.front();
  VectorXd mean = VectorXd::Zero(lo.size());
  for (const auto& s : cluster) {
    lo = lo.cwiseMin(s);
    hi = hi.cwiseMax(s);
    mean += s;
  }
  mean /= static_cast<double>(cluster.size());
  const VectorXd d = hi - lo;
  const double dd = d.squaredNorm();
  if (dd == 0.0) return lo;
  const double t = std::clamp(d.dot(mean - lo) / dd, 0.0, 1.0);
  // Exact endpoints avoid rounding outside the segment.
  if (t == 0.0) return lo;
  if (t == 1.0) return hi;
  return (lo + t * d).cwiseMax(lo).cwiseMin(hi);
}

SearchBudgetExceeded::SearchBudgetExceeded(Partition incumbent, double lower_bound,
                                           std::int64_t nodes)
    : Error(ErrorCode::kSearchBudgetExceeded,
            "node limit reached after " + std::to_string(nodes) +
                " nodes; incumbent " + FormatDouble(incumbent.guarantee()) +
                ", lower bound " + FormatDouble(lower_bound)),
      incumbent_(std::move(incumbent)),
      lower_bound_(lower_bound),
      nodes_(nodes) {}

Partition OptimalPartition(const ScenarioSet& set, int k,
                           const OptimalPartitionOptions& options) {
  const int n = set.size();
  CheckK(k, n);
  if (k == n) {
    std::vector<int> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    return MinimumPartition(set, identity, "opt");
  }
  PartitionSearch search(set, k, options.node_limit);
  if (!options.warm_start.empty()) {
    if (static_cast<int>(options.warm_start.size()) != n) {
      throw Error(ErrorCode::kDimensionMismatch, "warm start size differs from scenario count");
    }
    const std::vector<int> canonical = Canonical(options.warm_start);
    if (*std::max_element(canonical.begin(), canonical.end()) + 1 != k) {
      throw Error(ErrorCode::kInvalidK, "warm start does not use exactly K clusters");
    }
    search.Offer(canonical);
  }
  search.Greedy();
  if (!search.Run()) {
    // Among any K + 1 scenarios two share a cluster.
    double lower = 1.0;
    if (k + 1 <= n) {
      const auto pts = FarthestFirst(search.ratio(), search.order()[0], k + 1);
      lower = kInfinity;
      for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b)
          lower = std::min(lower, search.ratio()(pts[a], pts[b]));
    }
    throw SearchBudgetExceeded(MinimumPartition(set, search.best_assignment(), "opt"),
                               std::min(lower, search.best()), search.nodes());
  }
  return MinimumPartition(set, search.best_assignment(), "opt");
}

Partition KMeansPartition(const ScenarioSet& set, int k, const KMeansOptions& options) {
  const int n = set.size();
  CheckK(k, n);
  std::vector<VectorXd> points = set.scenarios();
  if (options.normalize) {
    VectorXd mean = VectorXd::Zero(set.dimension());
    for (const auto& s : points) mean += s;
    mean /= n;
    for (auto& s : points) s = s.cwiseQuotient(mean);
  }

  // Seeded distinct initial centers: partial Fisher-Yates over indices.
  Rng rng(options.seed);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<VectorXd> centers;
  for (int j = 0; j < k; ++j) {
    const int pick = j + static_cast<int>(rng.Index(n - j));
    std::swap(idx[j], idx[pick]);
    centers.push_back(points[idx[j]]);
  }

  std::vector<int> assignment(n, -1);
  for (int iter = 0; iter < options.max_iter; ++iter) {
    std::vector<int> next(n);
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = SquaredDistance(points[i], centers[0]);
      for (int j = 1; j < k; ++j) {
        const double d = SquaredDistance(points[i], centers[j]);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      next[i] = best;
    }
    // Empty clusters steal the point farthest from its own center.
    std::vector<int> size(k, 0);
    for (int a : next) ++size[a];
    for (int j = 0; j < k; ++j) {
      if (size[j] > 0) continue;
      int steal = -1;
      double far = -1.0;
      for (int i = 0; i < n; ++i) {
        if (size[next[i]] <= 1) continue;
        const double d = SquaredDistance(points[i], centers[next[i]]);
        if (d > far) {
          far = d;
          steal = i;
        }
      }
      --size[next[steal]];
      next[steal] = j;
      size[j] = 1;
    }
    const bool converged = next == assignment;
    assignment = std::move(next);
    for (int j = 0; j < k; ++j) centers[j].setZero();
    for (int i = 0; i < n; ++i) centers[assignment[i]] += points[i];
    for (int j = 0; j < k; ++j) centers[j] /= size[j];
    if (converged) break;
  }

  Partition p;
  p.assignment = Canonical(assignment);
  p.k = k;
  for (const auto& cluster : Members(set, p.assignment, k)) {
    p.representatives.push_back(DiagonalRepresentative(cluster));
  }
  const AlphaBeta ab = GuaranteeOf(set, p.assignment, p.representatives);
  p.alpha = ab.alpha;
  p.beta = ab.beta;
  p.method = "kmeans";
  p.seed = options.seed;
  return p;
}

BoxSplit SplitBox(const VectorXd& lo, const VectorXd& hi, const std::vector<int>& splits) {
  const Eigen::Index m = lo.size();
  if (hi.size() != m || static_cast<Eigen::Index>(splits.size()) != m || m == 0) {
    throw Error(ErrorCode::kInvalidSplitCounts, "need one split count per box axis");
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (splits[i] < 1) {
      throw Error(ErrorCode::kInvalidSplitCounts, "split counts must be >= 1");
    }
    if (!(lo(i) > 0.0) || !(hi(i) >= lo(i)) || !std::isfinite(hi(i))) {
      throw Error(ErrorCode::kInvalidSplitCounts,
                  "box must satisfy 0 < lo <= hi < inf on every axis");
    }
  }
  BoxSplit out;
  out.bound = 1.0;
  out.realized = 1.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double q = hi(i) / lo(i);
    const int r = splits[i];
    out.bound = std::max(out.bound, std::pow(q, 1.0 / r));
    std::vector<double> points{lo(i)};
    for (int u = 1; u < r; ++u) points.push_back(lo(i) * std::pow(q, static_cast<double>(u) / r));
    points.push_back(hi(i));
    for (std::size_t u = 1; u < points.size(); ++u) {
      out.realized = std::max(out.realized, points[u] / points[u - 1]);
    }
    out.breakpoints.emplace_back(points.begin() + 1, points.end() - 1);
  }
  return out;
}

HyperrectResult HyperrectPartition(const ScenarioSet& set, const std::vector<int>& splits) {
  HyperrectResult out;
  const VectorXd lo = set.ComponentMin();
  out.split = SplitBox(lo, set.ComponentMax(), splits);
  const int m = set.dimension();
  std::map<std::vector<int>, int> cells;  // lexicographic cell order
  std::vector<std::vector<int>> cell_of(set.size(), std::vector<int>(m));
  for (int i = 0; i < set.size(); ++i) {
    for (int c = 0; c < m; ++c) {
      const auto& bp = out.split.breakpoints[c];
      cell_of[i][c] = static_cast<int>(std::upper_bound(bp.begin(), bp.end(), set[i](c)) - bp.begin());
    }
    cells.emplace(cell_of[i], 0);
  }
  int id = 0;
  for (auto& [cell, index] : cells) index = id++;
  Partition& p = out.partition;
  p.k = id;
  p.assignment.resize(set.size());
  p.representatives.assign(id, VectorXd(m));
  for (const auto& [cell, index] : cells) {
    for (int c = 0; c < m; ++c) {
      p.representatives[index](c) = cell[c] == 0 ? lo(c) : out.split.breakpoints[c][cell[c] - 1];
    }
  }
  for (int i = 0; i < set.size(); ++i) p.assignment[i] = cells.at(cell_of[i]);
  const AlphaBeta ab = GuaranteeOf(set, p.assignment, p.representatives);
  p.alpha = ab.alpha;
  p.beta = ab.beta;
  p.method = "hyperrect";
  return out;
}

std::vector<int> SplitsForK(const VectorXd& lo, const VectorXd& hi, int k) {
  const int m = static_cast<int>(lo.size());
  if (k < 1 || m < 1) throw Error(ErrorCode::kInvalidK, "K must be >= 1");
  std::vector<double> log_ratio(m);
  for (int i = 0; i < m; ++i) log_ratio[i] = std::log(hi(i) / lo(i));
  std::vector<int> current(m, 1), best;
  double best_value = kInfinity;
  // Ordered factorizations of k into m factors.
  auto recurse = [&](auto&& self, int axis, int remaining) -> void {
    if (axis == m - 1) {
      current[axis] = remaining;
      double v = 0.0;
      for (int i = 0; i < m; ++i) v = std::max(v, log_ratio[i] / current[i]);
      if (v < best_value) {
        best_value = v;
        best = current;
      }
      return;
    }
    for (int f = 1; f <= remaining; ++f) {
      if (remaining % f != 0) continue;
      current[axis] = f;
      self(self, axis + 1, remaining / f);
    }
  };
  recurse(recurse, 0, k);
  return best;
}

BigM BigMConstants(const ScenarioSet& set) {
  BigM out;
  out.covering = set.AsMatrix();
  const VectorXd hi = set.ComponentMax();
  out.lower = (-out.covering).rowwise() + hi.transpose();
  return out;
}

std::string ClusteringMipText(const ScenarioSet& set, int k) {
  CheckK(k, set.size());
  const BigM big_m = BigMConstants(set);
  const int n = set.size();
  const int m = set.dimension();
  std::ostringstream out;
  out << "\\ Scenario clustering MIP: " << n << " scenarios, " << m << " components, " << k
      << " clusters.\n"
      << "\\ Optimal alpha = 1 / t; representatives are st_j_c.\n"
      << "Maximize\n obj: t\nSubject To\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      for (int c = 0; c < m; ++c) {
        const std::string z = "z_" + std::to_string(i) + "_" + std::to_string(j);
        const std::string st = "st_" + std::to_string(j) + "_" + std::to_string(c);
        const double mb = big_m.covering(i, c);
        const double mc = big_m.lower(i, c);
        out << " cover_" << i << "_" << j << "_" << c << ": " << FormatDouble(set[i](c))
            << " t - " << st << " + " << FormatDouble(mb) << " " << z
            << " <= " << FormatDouble(mb) << "\n";
        out << " lower_" << i << "_" << j << "_" << c << ": " << st << " + "
            << FormatDouble(mc) << " " << z << " <= " << FormatDouble(set[i](c) + mc) << "\n";
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    out << " assign_" << i << ":";
    for (int j = 0; j < k; ++j) out << (j ? " + " : " ") << "z_" << i << "_" << j;
    out << " = 1\n";
  }
  for (int j = 0; j < k; ++j) {
    out << " nonempty_" << j << ":";
    for (int i = 0; i < n; ++i) out << (i ? " + " : " ") << "z_" << i << "_" << j;
    out << " >= 1\n";
  }
  out << "Bounds\n t >= 0\nBinary\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) out << " z_" << i << "_" << j << "\n";
  out << "End\n";
  return out.str();
}

}  // namespace scenred
