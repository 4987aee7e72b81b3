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

#include "scenred/ambiguity.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "json.hpp"
#include "scenred/linalg.h"
#include "scenred/lp.h"
#include "scenred/scenarios.h"

namespace scenred {
namespace {

using nlohmann::json;

void CheckAtoms(const AmbiguitySet& set, Eigen::Index n, const char* what) {
  if (set.atoms() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": set has " + std::to_string(set.atoms()) +
                    " atoms, got " + std::to_string(n));
  }
}

// Sigma - Sigma 1 1' Sigma / (1' Sigma 1): the covariance restricted to the
// hyperplane sum(p) = const.
MatrixXd HyperplaneSigma(const MatrixXd& sigma) {
  const VectorXd s1 = sigma.rowwise().sum();
  return sigma - s1 * s1.transpose() / s1.sum();
}

std::vector<double> ToStd(const VectorXd& v) { return {v.data(), v.data() + v.size()}; }

VectorXd FromStd(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

AmbiguitySet AmbiguitySet::Simplex(int atoms) {
  if (atoms < 1) throw Error(ErrorCode::kInvalidSpec, "simplex needs at least one atom");
  return AmbiguitySet(SimplexSet{atoms});
}

AmbiguitySet AmbiguitySet::Box(VectorXd lower, VectorXd upper) {
  if (lower.size() != upper.size() || lower.size() == 0) {
    throw Error(ErrorCode::kInvalidSpec, "box bounds must be nonempty and of equal size");
  }
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower(i) >= 0.0 && lower(i) <= upper(i) && upper(i) <= 1.0)) {
      throw Error(ErrorCode::kInvalidSpec,
                  "box bounds must satisfy 0 <= l <= u <= 1 (atom " + std::to_string(i) + ")");
    }
  }
  return AmbiguitySet(BoxSet{std::move(lower), std::move(upper)});
}

AmbiguitySet AmbiguitySet::Ellipsoid(VectorXd center, MatrixXd sigma, double radius) {
  const Eigen::Index n = center.size();
  if (n == 0 || sigma.rows() != n || sigma.cols() != n) {
    throw Error(ErrorCode::kInvalidSpec, "ellipsoid center and sigma sizes differ");
  }
  if (std::abs(center.sum() - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidSpec, "ellipsoid center must sum to 1");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::kInvalidSpec, "ellipsoid radius must be positive");
  }
  Cholesky(sigma);  // throws if not SPD
  return AmbiguitySet(EllipsoidSet{std::move(center), std::move(sigma), radius});
}

AmbiguitySet AmbiguitySet::Point(const VectorXd& p) { return Box(p, p); }

int AmbiguitySet::atoms() const {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SimplexSet>) {
          return s.atoms;
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          return static_cast<int>(s.lower.size());
        } else {
          return static_cast<int>(s.center.size());
        }
      },
      variant_);
}

std::string_view AmbiguitySet::kind() const {
  if (is_simplex()) return "simplex";
  if (is_box()) return "box";
  return "ellipsoid";
}

bool AmbiguitySet::Contains(const VectorXd& p, double tol) const {
  if (p.size() != atoms()) return false;
  if (std::abs(p.sum() - 1.0) > tol) return false;
  if (is_simplex()) return (p.array() >= -tol).all();
  if (is_box()) {
    return (p.array() >= box().lower.array() - tol).all() &&
           (p.array() <= box().upper.array() + tol).all();
  }
  const EllipsoidSet& e = ellipsoid();
  const VectorXd d = p - e.center;
  const double q = d.dot(SolveSpd(e.sigma, d));
  return q <= e.radius * e.radius * (1.0 + tol) + tol;
}

std::string AmbiguityToJson(const AmbiguitySet& set) {
  json doc;
  doc["kind"] = std::string(set.kind());
  doc["atoms"] = set.atoms();
  if (set.is_box()) {
    doc["lower"] = ToStd(set.box().lower);
    doc["upper"] = ToStd(set.box().upper);
  } else if (set.is_ellipsoid()) {
    const EllipsoidSet& e = set.ellipsoid();
    doc["center"] = ToStd(e.center);
    json rows = json::array();
    for (Eigen::Index r = 0; r < e.sigma.rows(); ++r) rows.push_back(ToStd(e.sigma.row(r)));
    doc["sigma"] = std::move(rows);
    doc["radius"] = e.radius;
  }
  return doc.dump(2) + "\n";
}

AmbiguitySet AmbiguityFromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "simplex") return AmbiguitySet::Simplex(doc.at("atoms").get<int>());
    if (kind == "box") {
      return AmbiguitySet::Box(FromStd(doc.at("lower").get<std::vector<double>>()),
                               FromStd(doc.at("upper").get<std::vector<double>>()));
    }
    if (kind == "ellipsoid") {
      const auto rows = doc.at("sigma").get<std::vector<std::vector<double>>>();
      MatrixXd sigma(rows.size(), rows.size());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.size()) {
          throw Error(ErrorCode::kParseError, "sigma must be square");
        }
        for (std::size_t c = 0; c < rows.size(); ++c) sigma(r, c) = rows[r][c];
      }
      return AmbiguitySet::Ellipsoid(FromStd(doc.at("center").get<std::vector<double>>()),
                                     std::move(sigma), doc.at("radius").get<double>());
    }
    throw Error(ErrorCode::kParseError, "unknown ambiguity kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("ambiguity JSON: ") + e.what());
  }
}

MatrixXd AggregationMatrix(const std::vector<int>& assignment, int k) {
  MatrixXd a = MatrixXd::Zero(k, static_cast<Eigen::Index>(assignment.size()));
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] < 0 || assignment[i] >= k) {
      throw Error(ErrorCode::kDimensionMismatch, "cluster index outside [0, K)");
    }
    a(assignment[i], static_cast<Eigen::Index>(i)) = 1.0;
  }
  for (int j = 0; j < k; ++j) {
    if (a.row(j).sum() == 0.0) {
      throw Error(ErrorCode::kEmptyCluster, "cluster " + std::to_string(j) + " is empty");
    }
  }
  return a;
}

double NormalQuantile(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorCode::kInvalidDelta, "quantile level must lie in (0, 1)");
  }
  // Acklam's rational approximation (relative error below 1.2e-9).
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  double x;
  if (q < kLow) {
    const double t = std::sqrt(-2.0 * std::log(q));
    x = (((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
        ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
  } else if (q <= 1.0 - kLow) {
    const double t = q - 0.5;
    const double r = t * t;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * t /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double t = std::sqrt(-2.0 * std::log1p(-q));
    x = -(((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
        ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
  }
  // Refine by bisection on Phi(z) = erfc(-z / sqrt 2) / 2.
  auto phi = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
  double width = 1e-6 * std::max(1.0, std::abs(x));
  double lo = x - width, hi = x + width;
  while (phi(lo) > q) lo -= (width *= 2.0);
  while (phi(hi) < q) hi += (width *= 2.0);
  while (hi - lo > 1e-10 * 1e-3) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (phi(mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SampledBox FromSamples(const VectorXd& p_hat, int samples, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidDelta, "delta must lie in (0, 1)");
  }
  if (samples < 0) throw Error(ErrorCode::kInvalidSpec, "sample count must be >= 0");
  if (p_hat.size() == 0 || (p_hat.array() < 0.0).any() || std::abs(p_hat.sum() - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidSpec, "p_hat must be a probability vector");
  }
  if (samples == 0) {
    return {AmbiguitySet::Simplex(static_cast<int>(p_hat.size())), 1.0, false};
  }
  const double h = NormalQuantile(1.0 - delta / 2.0) / (2.0 * std::sqrt(static_cast<double>(samples)));
  const VectorXd lo = (p_hat.array() - h).matrix();
  const VectorXd hi = (p_hat.array() + h).matrix();
  const bool clipped = (lo.array() < 0.0).any() || (hi.array() > 1.0).any();
  return {AmbiguitySet::Box(lo.cwiseMax(0.0), hi.cwiseMin(1.0)), h, clipped};
}

VectorXd SampleEmpirical(const VectorXd& p, int samples, Rng& rng) {
  if (samples <= 0) return p;
  VectorXd cdf(p.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) cdf(i) = (acc += p(i));
  VectorXd counts = VectorXd::Zero(p.size());
  for (int s = 0; s < samples; ++s) {
    const double u = rng.Uniform() * acc;
    Eigen::Index i = 0;
    while (i + 1 < p.size() && cdf(i) <= u) ++i;
    counts(i) += 1.0;
  }
  return counts / static_cast<double>(samples);
}

VectorXd RandomDistribution(int atoms, Rng& rng) {
  VectorXd w(atoms);
  for (int i = 0; i < atoms; ++i) w(i) = -std::log(1.0 - rng.Uniform());
  return w / w.sum();
}

AmbiguitySet Project(const AmbiguitySet& set, const MatrixXd& a) {
  if (a.cols() != set.atoms()) {
    throw Error(ErrorCode::kDimensionMismatch, "aggregation matrix columns differ from atoms");
  }
  const int k = static_cast<int>(a.rows());
  if (set.is_simplex()) return AmbiguitySet::Simplex(k);
  if (set.is_box()) {
    const VectorXd lo = (a * set.box().lower).cwiseMax(0.0).cwiseMin(1.0);
    const VectorXd hi = (a * set.box().upper).cwiseMin(1.0).cwiseMax(lo);
    return AmbiguitySet::Box(lo, hi);
  }
  const EllipsoidSet& e = set.ellipsoid();
  MatrixXd sigma = a * e.sigma * a.transpose();
  sigma = (sigma + sigma.transpose()) / 2.0;
  try {
    Cholesky(sigma);
  } catch (const Error&) {
    throw Error(ErrorCode::kRankDeficient, "A sigma A' is not positive definite");
  }
  VectorXd center = a * e.center;
  return AmbiguitySet::Ellipsoid(std::move(center), std::move(sigma), e.radius);
}

WorstCase WorstCaseExpectation(const AmbiguitySet& set, const VectorXd& f) {
  CheckAtoms(set, f.size(), "WorstCaseExpectation");
  const Eigen::Index n = f.size();
  WorstCase out;
  if (set.is_simplex()) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < n; ++i)
      if (f(i) > f(best)) best = i;
    out.value = f(best);
    out.p = VectorXd::Unit(n, best);
    return out;
  }
  if (set.is_box()) {
    const BoxSet& b = set.box();
    const double tol = 1e-12 * static_cast<double>(n);
    if (b.lower.sum() > 1.0 + tol || b.upper.sum() < 1.0 - tol) {
      throw Error(ErrorCode::kInfeasibleBox, "box does not meet the probability simplex");
    }
    LinearProgram lp(static_cast<int>(n), Sense::kMaximize);
    lp.cost = f;
    lp.lower = b.lower;
    lp.upper = b.upper;
    lp.AddRow(VectorXd::Ones(n), Relation::kEqual, 1.0);
    const LpSolution s = SolveLp(lp);
    if (s.status != LpStatus::kOptimal) {
      throw Error(ErrorCode::kInfeasibleBox, "box LP is " + std::string(LpStatusName(s.status)));
    }
    out.value = s.objective;
    out.p = s.x;
    return out;
  }
  const EllipsoidSet& e = set.ellipsoid();
  const MatrixXd sigma_hat = HyperplaneSigma(e.sigma);
  const VectorXd sf = sigma_hat * f;
  const double q = f.dot(sf);
  const double scale = std::max(1.0, e.sigma.norm() * f.squaredNorm());
  out.value = f.dot(e.center);
  out.p = e.center;
  if (q > 1e-14 * scale) {
    const double root = std::sqrt(q);
    out.value += e.radius * root;
    out.p += (e.radius / root) * sf;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (out.p(i) < -1e-9 || out.p(i) > 1.0 + 1e-9) {
      throw Error(ErrorCode::kBoundsViolated,
                  "ellipsoid maximizer leaves [0, 1] at atom " + std::to_string(i) + " (" +
                      FormatDouble(out.p(i)) + ")");
    }
  }
  return out;
}

WorstCase LiftedWorstCase(const AmbiguitySet& set, const MatrixXd& a, const VectorXd& f_reduced) {
  if (set.is_ellipsoid()) {
    throw Error(ErrorCode::kInvalidSpec, "lifted formulation is for polyhedral sets");
  }
  CheckAtoms(set, a.cols(), "LiftedWorstCase");
  if (f_reduced.size() != a.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "reduced values differ from aggregation rows");
  }
  const int n = static_cast<int>(a.cols());
  const int k = static_cast<int>(a.rows());
  // Variables: p (n) then p~ (k); maximize f~' p~ with p~ = A p.
  LinearProgram lp(n + k, Sense::kMaximize);
  lp.cost.tail(k) = f_reduced;
  if (set.is_box()) {
    lp.lower.head(n) = set.box().lower;
    lp.upper.head(n) = set.box().upper;
  } else {
    lp.upper.head(n).setOnes();
  }
  lp.upper.tail(k).setOnes();
  VectorXd sum_row = VectorXd::Zero(n + k);
  sum_row.head(n).setOnes();
  lp.AddRow(sum_row, Relation::kEqual, 1.0);
  for (int j = 0; j < k; ++j) {
    VectorXd row = VectorXd::Zero(n + k);
    row.head(n) = a.row(j).transpose();
    row(n + j) = -1.0;
    lp.AddRow(row, Relation::kEqual, 0.0);
  }
  const LpSolution s = SolveLp(lp);
  if (s.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kInfeasibleBox, "lifted LP is " + std::string(LpStatusName(s.status)));
  }
  return {s.objective, s.x.tail(k)};
}

}  // namespace scenred
