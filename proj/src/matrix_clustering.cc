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

#include "scenred/matrix_clustering.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "scenred/linalg.h"

namespace scenred {
namespace {

using nlohmann::json;

constexpr double kInfinity = std::numeric_limits<double>::infinity();

void CheckK(int k, int n) {
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidK, "K = " + std::to_string(k) + " outside [1, " +
                                          std::to_string(n) + "]");
  }
}

json MatrixToJson(const MatrixXd& q) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < q.rows(); ++r) {
    std::vector<double> row(q.cols());
    for (Eigen::Index c = 0; c < q.cols(); ++c) row[c] = q(r, c);
    rows.push_back(std::move(row));
  }
  return rows;
}

void Certify(const MatrixScenarioSet& set, MatrixPartition& p) {
  p.alpha.assign(p.k, 0.0);
  p.beta.assign(p.k, 0.0);
  const auto clusters = p.Clusters();
  for (int j = 0; j < p.k; ++j) {
    std::vector<MatrixXd> members;
    for (int i : clusters[j]) members.push_back(set[i]);
    const AlphaBeta ab = EigGuarantee(members, p.representatives[j]);
    p.alpha[j] = ab.alpha;
    p.beta[j] = ab.beta;
  }
}

}  // namespace

bool PsdLeq(const MatrixXd& a, const MatrixXd& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "PsdLeq needs square matrices of equal size");
  }
  const MatrixXd diff = b - a;
  return LambdaMin(diff) >= -tol * std::max(1.0, diff.norm());
}

AlphaBeta EigGuarantee(const std::vector<MatrixXd>& cluster, const MatrixXd& representative) {
  if (cluster.empty()) throw Error(ErrorCode::kEmptyCluster, "empty cluster");
  const auto rep = SymmetricEigen(representative);
  const double rep_min = rep.values(0);
  const double rep_max = rep.values(rep.values.size() - 1);
  if (!(rep_min > 1e-12 * std::max(1.0, rep_max))) {
    throw Error(ErrorCode::kSingularRepresentative,
                "representative lambda_min " + FormatDouble(rep_min));
  }
  double max_of_max = 0.0;
  double min_of_min = kInfinity;
  for (const auto& q : cluster) {
    if (q.rows() != representative.rows() || q.cols() != representative.cols()) {
      throw Error(ErrorCode::kDimensionMismatch, "cluster matrix size differs from representative");
    }
    const auto eig = SymmetricEigen(q);
    max_of_max = std::max(max_of_max, eig.values(eig.values.size() - 1));
    min_of_min = std::min(min_of_min, eig.values(0));
  }
  return {max_of_max / rep_min, rep_max / min_of_min};
}

double MatrixPartition::guarantee() const {
  double g = 0.0;
  for (int j = 0; j < k; ++j) g = std::max(g, alpha[j] * beta[j]);
  return g;
}

double MatrixPartition::certified_alpha() const {
  return alpha.empty() ? 1.0 : *std::max_element(alpha.begin(), alpha.end());
}

double MatrixPartition::certified_beta() const {
  return beta.empty() ? 1.0 : *std::max_element(beta.begin(), beta.end());
}

std::vector<std::vector<int>> MatrixPartition::Clusters() const {
  std::vector<std::vector<int>> out(k);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    out[assignment[i]].push_back(static_cast<int>(i));
  }
  return out;
}

std::string MatrixPartitionToJson(const MatrixPartition& p) {
  json doc;
  doc["K"] = p.k;
  doc["assignment"] = p.assignment;
  json clusters = json::array();
  for (int j = 0; j < p.k; ++j) {
    const auto eig = SymmetricEigen(p.representatives[j]);
    json c;
    c["representative"] = MatrixToJson(p.representatives[j]);
    c["alpha"] = p.alpha[j];
    c["beta"] = p.beta[j];
    c["representative_lambda_min"] = eig.values(0);
    c["representative_lambda_max"] = eig.values(eig.values.size() - 1);
    clusters.push_back(std::move(c));
  }
  doc["clusters"] = std::move(clusters);
  doc["guarantee"] = p.guarantee();
  doc["certified_alpha"] = p.certified_alpha();
  doc["certified_beta"] = p.certified_beta();
  doc["method"] = p.method;
  doc["seed"] = p.seed;
  return doc.dump(2) + "\n";
}

MatrixPartition FrobeniusKMeans(const MatrixScenarioSet& set, int k, std::uint64_t seed,
                                int max_iter) {
  const int n = set.size();
  CheckK(k, n);
  Rng rng(seed);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<MatrixXd> centers;
  for (int j = 0; j < k; ++j) {
    const int pick = j + static_cast<int>(rng.Index(n - j));
    std::swap(idx[j], idx[pick]);
    centers.push_back(set[idx[j]]);
  }
  auto dist = [&](int i, const MatrixXd& c) { return (set[i] - c).squaredNorm(); };

  std::vector<int> assignment(n, -1);
  std::vector<int> size(k, 0);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<int> next(n);
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = dist(i, centers[0]);
      for (int j = 1; j < k; ++j) {
        const double d = dist(i, centers[j]);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      next[i] = best;
    }
    size.assign(k, 0);
    for (int a : next) ++size[a];
    for (int j = 0; j < k; ++j) {
      if (size[j] > 0) continue;
      int steal = -1;
      double far = -1.0;
      for (int i = 0; i < n; ++i) {
        if (size[next[i]] <= 1) continue;
        const double d = dist(i, centers[next[i]]);
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
    for (auto& c : centers) c.setZero();
    for (int i = 0; i < n; ++i) centers[assignment[i]] += set[i];
    for (int j = 0; j < k; ++j) centers[j] /= size[j];
    if (converged) break;
  }

  MatrixPartition p;
  p.k = k;
  // Relabel by first appearance.
  std::vector<int> relabel(k, -1);
  int next_label = 0;
  p.assignment.resize(n);
  for (int i = 0; i < n; ++i) {
    if (relabel[assignment[i]] < 0) relabel[assignment[i]] = next_label++;
    p.assignment[i] = relabel[assignment[i]];
  }
  p.representatives.assign(k, MatrixXd());
  for (int j = 0; j < k; ++j) {
    MatrixXd c = centers[j];
    p.representatives[relabel[j]] = (c + c.transpose()) / 2.0;
  }
  p.method = "kmeans";
  p.seed = seed;
  Certify(set, p);
  return p;
}

MatrixPartition OptimalMatrixPartition(const MatrixScenarioSet& set, int k) {
  const int n = set.size();
  if (n > kMaxExhaustiveScenarios) {
    throw Error(ErrorCode::kTooManyScenarios,
                std::to_string(n) + " matrix scenarios exceed the exhaustive limit of " +
                    std::to_string(kMaxExhaustiveScenarios));
  }
  CheckK(k, n);
  // Each cluster's value is max lambda_max / min lambda_min over members.
  std::vector<int> current(n, 0), best_assignment;
  std::vector<double> lo(k), hi(k);
  double best = kInfinity;
  auto rec = [&](auto&& self, int i, int used, double value) -> void {
    if (i == n) {
      if (used == k && value < best) {
        best = value;
        best_assignment = current;
      }
      return;
    }
    if (n - i < k - used) return;
    const double lmin = set.lambda_min(i);
    const double lmax = set.lambda_max(i);
    for (int j = 0; j <= std::min(used, k - 1); ++j) {
      const bool fresh = j == used;
      const double old_lo = lo[j], old_hi = hi[j];
      lo[j] = fresh ? lmin : std::min(lo[j], lmin);
      hi[j] = fresh ? lmax : std::max(hi[j], lmax);
      const double v = std::max(value, hi[j] / lo[j]);
      if (v < best) {
        current[i] = j;
        self(self, i + 1, fresh ? used + 1 : used, v);
      }
      lo[j] = old_lo;
      hi[j] = old_hi;
    }
  };
  rec(rec, 0, 0, 0.0);

  MatrixPartition p;
  p.k = k;
  p.assignment = best_assignment;
  const auto clusters = p.Clusters();
  for (int j = 0; j < k; ++j) {
    double c = kInfinity;
    for (int i : clusters[j]) c = std::min(c, set.lambda_min(i));
    p.representatives.push_back(c * MatrixXd::Identity(set.dimension(), set.dimension()));
  }
  p.method = "opt";
  Certify(set, p);
  return p;
}

MisdpConstants MisdpBigM(const MatrixScenarioSet& set) {
  MisdpConstants out;
  const int n = set.size();
  out.m1.resize(n);
  out.m2.resize(n);
  double top = 0.0;
  for (int i = 0; i < n; ++i) top = std::max(top, set.lambda_max(i));
  for (int i = 0; i < n; ++i) {
    out.m1(i) = set.lambda_max(i);
    out.m2(i) = top - set.lambda_min(i);
  }
  return out;
}

std::string MisdpText(const MatrixScenarioSet& set, int k) {
  CheckK(k, set.size());
  const MisdpConstants c = MisdpBigM(set);
  const int n = set.size();
  const int d = set.dimension();
  std::ostringstream out;
  out << "# Matrix clustering MISDP: " << n << " scenarios of size " << d << "x" << d << ", "
      << k << " clusters.\n"
      << "# Variables: t >= 0, symmetric R_j >= 0 (PSD), binary z_i_j.\n"
      << "# 'A <= B' denotes the PSD order; I is the " << d << "x" << d << " identity.\n"
      << "maximize t\nsubject to\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      out << "  t Q_" << i << " <= R_" << j << " + " << FormatDouble(c.m1(i)) << " (1 - z_" << i
          << "_" << j << ") I\n";
      out << "  R_" << j << " <= Q_" << i << " + " << FormatDouble(c.m2(i)) << " (1 - z_" << i
          << "_" << j << ") I\n";
    }
  }
  for (int i = 0; i < n; ++i) {
    out << "  sum_j z_" << i << "_j = 1\n";
  }
  for (int j = 0; j < k; ++j) out << "  sum_i z_i_" << j << " >= 1\n";
  out << "data\n";
  for (int i = 0; i < n; ++i) {
    out << "  Q_" << i << " =";
    for (int r = 0; r < d; ++r) {
      out << " [";
      for (int col = 0; col < d; ++col) out << (col ? " " : "") << FormatDouble(set[i](r, col));
      out << "]";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace scenred
