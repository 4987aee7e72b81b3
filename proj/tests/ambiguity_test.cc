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
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"
#include "scenred/lp.h"

namespace scenred {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd V(std::initializer_list<double> v) {
  VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an exception";
  return ErrorCode::kSolverFailure;
}

// Random box that meets the simplex: p_hat -/+ independent widths.
AmbiguitySet RandomBox(Rng& rng, int n) {
  const VectorXd p = RandomDistribution(n, rng);
  VectorXd lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    lo(i) = std::max(0.0, p(i) - rng.Uniform(0.0, 0.3));
    hi(i) = std::min(1.0, p(i) + rng.Uniform(0.0, 0.3));
  }
  return AmbiguitySet::Box(lo, hi);
}

// Random ellipsoid small enough to stay inside the simplex.
AmbiguitySet RandomEllipsoid(Rng& rng, int n) {
  const VectorXd p0 = (RandomDistribution(n, rng) + VectorXd::Constant(n, 1.0 / n)) / 2.0;
  MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = rng.Normal();
  const MatrixXd sigma = b * b.transpose() + 0.1 * MatrixXd::Identity(n, n);
  const VectorXd s1 = sigma.rowwise().sum();
  const MatrixXd sigma_hat = sigma - s1 * s1.transpose() / s1.sum();
  const double reach = sigma_hat.diagonal().cwiseMax(0.0).cwiseSqrt().maxCoeff();
  const double r = 0.9 * p0.minCoeff() / reach;
  return AmbiguitySet::Ellipsoid(p0, sigma, r);
}

std::vector<int> RandomAssignment(Rng& rng, int n, int k) {
  std::vector<int> a(n);
  for (int i = 0; i < n; ++i) a[i] = i < k ? i : static_cast<int>(rng.Index(k));
  for (int i = n - 1; i > 0; --i) std::swap(a[i], a[rng.Index(i + 1)]);
  return a;
}

// Member of {l <= p <= u, sum p = 1}: l + s * w (u - l) scaled to unit sum,
// rejected when the scale exceeds one.
bool SampleBoxMember(Rng& rng, const BoxSet& box, VectorXd& p) {
  const Eigen::Index n = box.lower.size();
  VectorXd step(n);
  for (Eigen::Index i = 0; i < n; ++i) step(i) = rng.Uniform() * (box.upper(i) - box.lower(i));
  const double need = 1.0 - box.lower.sum();
  if (step.sum() <= 0.0) {
    if (std::abs(need) > 1e-15) return false;
    p = box.lower;
    return true;
  }
  const double s = need / step.sum();
  if (s > 1.0) return false;
  p = box.lower + s * step;
  return true;
}

// Member of the ellipsoid on the hyperplane: p0 + rho * Sigma_hat g scaled
// to the boundary, rho in [0, 1].
VectorXd SampleEllipsoidMember(Rng& rng, const EllipsoidSet& e, double rho) {
  const Eigen::Index n = e.center.size();
  const VectorXd s1 = e.sigma.rowwise().sum();
  const MatrixXd sigma_hat = e.sigma - s1 * s1.transpose() / s1.sum();
  VectorXd g(n);
  for (Eigen::Index i = 0; i < n; ++i) g(i) = rng.Normal();
  const VectorXd d = sigma_hat * g;
  // d' Sigma^-1 d = g' Sigma_hat g.
  const double norm = std::sqrt(g.dot(d));
  return e.center + (rho * e.radius / norm) * d;
}

// Max of f'p over the vertices of {l <= p <= u, sum p = 1}: all coordinates
// but one sit at a bound.
double VertexOracle(const BoxSet& box, const VectorXd& f) {
  const int n = static_cast<int>(f.size());
  double best = -std::numeric_limits<double>::infinity();
  for (int free = 0; free < n; ++free) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      if (mask & (1 << free)) continue;
      VectorXd p(n);
      double rest = 0.0;
      for (int i = 0; i < n; ++i) {
        if (i == free) continue;
        p(i) = (mask & (1 << i)) ? box.upper(i) : box.lower(i);
        rest += p(i);
      }
      p(free) = 1.0 - rest;
      if (p(free) < box.lower(free) - 1e-12 || p(free) > box.upper(free) + 1e-12) continue;
      best = std::max(best, f.dot(p));
    }
  }
  return best;
}

TEST(NormalQuantileTest, KnownValues) {
  EXPECT_NEAR(NormalQuantile(0.95), 1.6448536269514722, 1e-10);
  EXPECT_NEAR(NormalQuantile(0.975), 1.959963984540054, 1e-10);
  EXPECT_NEAR(NormalQuantile(0.5), 0.0, 1e-12);
  EXPECT_NEAR(NormalQuantile(1e-10), -6.361340902404056, 1e-8);
}

TEST(NormalQuantileTest, InvertsErfc) {
  for (double q = 0.001; q < 1.0; q += 0.0137) {
    const double z = NormalQuantile(q);
    EXPECT_NEAR(0.5 * std::erfc(-z / std::numbers::sqrt2), q, 1e-12) << q;
    EXPECT_NEAR(NormalQuantile(1.0 - q), -z, 1e-9) << q;
  }
  EXPECT_EQ(CodeOf([] { NormalQuantile(0.0); }), ErrorCode::kInvalidDelta);
  EXPECT_EQ(CodeOf([] { NormalQuantile(1.0); }), ErrorCode::kInvalidDelta);
}

TEST(FromSamplesTest, ZeroSamplesGiveSimplex) {
  const SampledBox b = FromSamples(V({0.2, 0.3, 0.5}), 0, 0.1);
  EXPECT_TRUE(b.set.is_simplex());
  EXPECT_EQ(b.set.atoms(), 3);
}

TEST(FromSamplesTest, HalfWidth) {
  const VectorXd p = V({0.25, 0.25, 0.5});
  const SampledBox b = FromSamples(p, 100, 0.1);
  EXPECT_NEAR(b.half_width, 0.08224268, 1e-8);
  ASSERT_TRUE(b.set.is_box());
  EXPECT_FALSE(b.clipped);
  EXPECT_NEAR(b.set.box().lower(0), 0.25 - 0.08224268, 1e-8);
  EXPECT_NEAR(b.set.box().upper(2), 0.5 + 0.08224268, 1e-8);
}

TEST(FromSamplesTest, ShrinksWithSamplesAndClips) {
  const VectorXd p = V({0.01, 0.99});
  double last = std::numeric_limits<double>::infinity();
  for (int n : {1, 10, 100, 10000, 100000000}) {
    const SampledBox b = FromSamples(p, n, 0.1);
    EXPECT_LT(b.half_width, last);
    last = b.half_width;
    EXPECT_TRUE((b.set.box().lower.array() >= 0.0).all());
    EXPECT_TRUE((b.set.box().upper.array() <= 1.0).all());
    EXPECT_TRUE(b.set.Contains(p));
  }
  EXPECT_LT(last, 1e-4);
  EXPECT_TRUE(FromSamples(p, 10, 0.1).clipped);
  EXPECT_EQ(CodeOf([&] { FromSamples(p, 10, 0.0); }), ErrorCode::kInvalidDelta);
  EXPECT_EQ(CodeOf([&] { FromSamples(p, 10, 1.0); }), ErrorCode::kInvalidDelta);
}

TEST(SampleEmpiricalTest, FrequenciesConverge) {
  Rng rng(3);
  const VectorXd p = V({0.1, 0.6, 0.3});
  const VectorXd hat = SampleEmpirical(p, 100000, rng);
  EXPECT_NEAR(hat.sum(), 1.0, 1e-12);
  EXPECT_LT((hat - p).cwiseAbs().maxCoeff(), 0.01);
  EXPECT_EQ(SampleEmpirical(p, 0, rng), p);
}

TEST(AmbiguitySetTest, ConstructionErrors) {
  EXPECT_EQ(CodeOf([] { AmbiguitySet::Box(V({0.5, 0.1}), V({0.4, 0.9})); }),
            ErrorCode::kInvalidSpec);
  EXPECT_EQ(CodeOf([] { AmbiguitySet::Box(V({0.0}), V({1.5})); }), ErrorCode::kInvalidSpec);
  EXPECT_EQ(CodeOf([] { AmbiguitySet::Ellipsoid(V({0.5, 0.6}), MatrixXd::Identity(2, 2), 0.1); }),
            ErrorCode::kInvalidSpec);
  EXPECT_EQ(CodeOf([] { AmbiguitySet::Ellipsoid(V({0.5, 0.5}), MatrixXd::Identity(2, 2), 0.0); }),
            ErrorCode::kInvalidSpec);
  MatrixXd indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  EXPECT_EQ(CodeOf([&] { AmbiguitySet::Ellipsoid(V({0.5, 0.5}), indefinite, 0.1); }),
            ErrorCode::kNotPositiveDefinite);
}

TEST(AmbiguitySetTest, JsonRoundTrip) {
  Rng rng(5);
  const std::vector<AmbiguitySet> sets = {AmbiguitySet::Simplex(4), RandomBox(rng, 4),
                                          RandomEllipsoid(rng, 3)};
  for (const auto& s : sets) {
    const AmbiguitySet back = AmbiguityFromJson(AmbiguityToJson(s));
    EXPECT_EQ(back.kind(), s.kind());
    EXPECT_EQ(back.atoms(), s.atoms());
    if (s.is_box()) {
      EXPECT_EQ(back.box().lower, s.box().lower);
      EXPECT_EQ(back.box().upper, s.box().upper);
    }
    if (s.is_ellipsoid()) {
      EXPECT_EQ(back.ellipsoid().sigma, s.ellipsoid().sigma);
      EXPECT_EQ(back.ellipsoid().center, s.ellipsoid().center);
      EXPECT_EQ(back.ellipsoid().radius, s.ellipsoid().radius);
    }
  }
  EXPECT_EQ(CodeOf([] { AmbiguityFromJson(R"({"kind":"cone"})"); }), ErrorCode::kParseError);
}

TEST(AggregationMatrixTest, Shape) {
  const MatrixXd a = AggregationMatrix({0, 0, 1}, 2);
  MatrixXd expected(2, 3);
  expected << 1, 1, 0, 0, 0, 1;
  EXPECT_EQ(a, expected);
  EXPECT_EQ(CodeOf([] { AggregationMatrix({0, 0, 2}, 3); }), ErrorCode::kEmptyCluster);
}

TEST(ProjectTest, IdentityLeavesSetUnchanged) {
  Rng rng(2);
  const AmbiguitySet box = RandomBox(rng, 4);
  const AmbiguitySet pb = Project(box, MatrixXd::Identity(4, 4));
  EXPECT_EQ(pb.box().lower, box.box().lower);
  EXPECT_EQ(pb.box().upper, box.box().upper);
  const AmbiguitySet e = RandomEllipsoid(rng, 4);
  const AmbiguitySet pe = Project(e, MatrixXd::Identity(4, 4));
  EXPECT_EQ(pe.ellipsoid().sigma, e.ellipsoid().sigma);
  EXPECT_EQ(pe.ellipsoid().center, e.ellipsoid().center);
  EXPECT_TRUE(Project(AmbiguitySet::Simplex(4), AggregationMatrix({0, 1, 1, 0}, 2)).is_simplex());
}

TEST(ProjectTest, BoxExample) {
  const AmbiguitySet box = AmbiguitySet::Box(V({0.1, 0.2, 0.3}), V({0.3, 0.4, 0.5}));
  const AmbiguitySet p = Project(box, AggregationMatrix({0, 0, 1}, 2));
  EXPECT_NEAR(p.box().lower(0), 0.3, 1e-15);
  EXPECT_NEAR(p.box().lower(1), 0.3, 1e-15);
  EXPECT_NEAR(p.box().upper(0), 0.7, 1e-15);
  EXPECT_NEAR(p.box().upper(1), 0.5, 1e-15);
}

TEST(ProjectTest, BoxClipsToOne) {
  const AmbiguitySet box = AmbiguitySet::Box(V({0.0, 0.0, 0.0}), V({0.6, 0.6, 0.6}));
  const AmbiguitySet p = Project(box, AggregationMatrix({0, 0, 1}, 2));
  EXPECT_EQ(p.box().upper(0), 1.0);
}

TEST(ProjectTest, EllipsoidExample) {
  const AmbiguitySet e =
      AmbiguitySet::Ellipsoid(VectorXd::Constant(3, 1.0 / 3.0), MatrixXd::Identity(3, 3), 0.1);
  MatrixXd a(2, 3);
  a << 1, 1, 0, 0, 0, 1;
  const AmbiguitySet p = Project(e, a);
  MatrixXd expected = MatrixXd::Zero(2, 2);
  expected.diagonal() << 2, 1;
  EXPECT_EQ(p.ellipsoid().sigma, expected);
  EXPECT_NEAR(p.ellipsoid().center(0), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(p.ellipsoid().radius, 0.1);
}

TEST(ProjectTest, RankDeficient) {
  const AmbiguitySet e =
      AmbiguitySet::Ellipsoid(VectorXd::Constant(2, 0.5), MatrixXd::Identity(2, 2), 0.1);
  MatrixXd a(2, 2);
  a << 1, 1, 1, 1;
  EXPECT_EQ(CodeOf([&] { Project(e, a); }), ErrorCode::kRankDeficient);
  EXPECT_EQ(CodeOf([&] { Project(e, MatrixXd::Identity(3, 3)); }),
            ErrorCode::kDimensionMismatch);
}

TEST(ProjectTest, Soundness) {
  Rng rng(11);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.Index(9));
    const int k = 1 + static_cast<int>(rng.Index(n));
    const MatrixXd a = AggregationMatrix(RandomAssignment(rng, n, k), k);
    const AmbiguitySet box = RandomBox(rng, n);
    const AmbiguitySet pbox = Project(box, a);
    const AmbiguitySet ell = RandomEllipsoid(rng, n);
    const AmbiguitySet pell = Project(ell, a);
    for (int s = 0; s < 500; ++s) {
      VectorXd p;
      if (SampleBoxMember(rng, box.box(), p)) {
        ASSERT_TRUE(box.Contains(p, 1e-12));
        ASSERT_TRUE(pbox.Contains(a * p, 1e-9));
        ++checked;
      }
      const VectorXd q = SampleEllipsoidMember(rng, ell.ellipsoid(), std::sqrt(rng.Uniform()));
      ASSERT_TRUE(ell.Contains(q, 1e-9));
      ASSERT_TRUE(pell.Contains(a * q, 1e-9));
    }
  }
  EXPECT_GT(checked, 1000);
}

// The bounds of the projected box, tightened against the simplex, are the
// exact extremes of each aggregated coordinate over the original set.
TEST(ProjectTest, BoxTightness) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.Index(7));
    const int k = 1 + static_cast<int>(rng.Index(n));
    const MatrixXd a = AggregationMatrix(RandomAssignment(rng, n, k), k);
    const AmbiguitySet box = RandomBox(rng, n);
    const AmbiguitySet proj = Project(box, a);
    const VectorXd al = a * box.box().lower;
    const VectorXd au = a * box.box().upper;
    for (int j = 0; j < k; ++j) {
      for (Sense sense : {Sense::kMinimize, Sense::kMaximize}) {
        LinearProgram lp(n, sense);
        lp.cost = a.row(j).transpose();
        lp.lower = box.box().lower;
        lp.upper = box.box().upper;
        lp.AddRow(VectorXd::Ones(n), Relation::kEqual, 1.0);
        const LpSolution s = SolveLp(lp);
        ASSERT_EQ(s.status, LpStatus::kOptimal);
        const double others_hi = au.sum() - au(j);
        const double others_lo = al.sum() - al(j);
        if (sense == Sense::kMinimize) {
          EXPECT_NEAR(s.objective, std::max(al(j), 1.0 - others_hi), 1e-9);
          EXPECT_GE(s.objective, proj.box().lower(j) - 1e-9);
        } else {
          EXPECT_NEAR(s.objective, std::min(au(j), 1.0 - others_lo), 1e-9);
          EXPECT_LE(s.objective, proj.box().upper(j) + 1e-9);
        }
      }
    }
    // Equal support functions: the projected box is the image of the set.
    for (int f = 0; f < 5; ++f) {
      VectorXd ft(k);
      for (int j = 0; j < k; ++j) ft(j) = rng.Uniform(-1.0, 1.0);
      EXPECT_NEAR(WorstCaseExpectation(proj, ft).value, LiftedWorstCase(box, a, ft).value, 1e-9);
    }
  }
}

TEST(WorstCaseTest, Examples) {
  const WorstCase s = WorstCaseExpectation(AmbiguitySet::Simplex(3), V({1, 5, 2}));
  EXPECT_EQ(s.value, 5.0);
  EXPECT_EQ(s.p, V({0, 1, 0}));

  const VectorXd p_hat = V({0.2, 0.5, 0.3});
  const VectorXd f = V({3, -1, 2});
  EXPECT_NEAR(WorstCaseExpectation(AmbiguitySet::Point(p_hat), f).value, f.dot(p_hat), 1e-12);

  const WorstCase b =
      WorstCaseExpectation(AmbiguitySet::Box(V({0.2, 0.2}), V({0.8, 0.8})), V({1, 2}));
  EXPECT_NEAR(b.value, 1.8, 1e-12);
  EXPECT_NEAR(b.p(1), 0.8, 1e-12);
}

TEST(WorstCaseTest, EllipsoidExample) {
  const AmbiguitySet e =
      AmbiguitySet::Ellipsoid(V({0.5, 0.5}), MatrixXd::Identity(2, 2), 0.1);
  const WorstCase w = WorstCaseExpectation(e, V({1, 0}));
  EXPECT_NEAR(w.value, 0.5 + 0.1 * std::sqrt(0.5), 1e-14);
  EXPECT_NEAR(w.value, 0.5707, 1e-4);
  // The set is the segment p = (0.5 + t, 0.5 - t) with 2 t^2 <= 0.01.
  double best = -1.0;
  for (int i = 0; i <= 100000; ++i) {
    const double t = -0.1 / std::numbers::sqrt2 + i * (0.2 / std::numbers::sqrt2) / 100000;
    best = std::max(best, 0.5 + t);
  }
  EXPECT_NEAR(w.value, best, 1e-9);
}

TEST(WorstCaseTest, Errors) {
  EXPECT_EQ(CodeOf([] { WorstCaseExpectation(AmbiguitySet::Box(V({0.6, 0.6}), V({0.7, 0.7})),
                                             V({1, 1})); }),
            ErrorCode::kInfeasibleBox);
  EXPECT_EQ(CodeOf([] { WorstCaseExpectation(AmbiguitySet::Box(V({0.1, 0.1}), V({0.2, 0.2})),
                                             V({1, 1})); }),
            ErrorCode::kInfeasibleBox);
  EXPECT_EQ(CodeOf([] {
              WorstCaseExpectation(
                  AmbiguitySet::Ellipsoid(V({0.5, 0.5}), MatrixXd::Identity(2, 2), 2.0), V({1, 0}));
            }),
            ErrorCode::kBoundsViolated);
  EXPECT_EQ(CodeOf([] { WorstCaseExpectation(AmbiguitySet::Simplex(3), V({1, 0})); }),
            ErrorCode::kDimensionMismatch);
}

TEST(WorstCaseTest, FlatValuesOnEllipsoid) {
  const AmbiguitySet e =
      AmbiguitySet::Ellipsoid(V({0.3, 0.7}), MatrixXd::Identity(2, 2), 0.1);
  const WorstCase w = WorstCaseExpectation(e, V({4, 4}));
  EXPECT_NEAR(w.value, 4.0, 1e-12);
  EXPECT_EQ(w.p, V({0.3, 0.7}));
}

TEST(WorstCaseTest, BoxMatchesVertexEnumeration) {
  Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.Index(5));
    const AmbiguitySet box = RandomBox(rng, n);
    VectorXd f(n);
    for (int i = 0; i < n; ++i) f(i) = rng.Uniform(-5.0, 5.0);
    const WorstCase w = WorstCaseExpectation(box, f);
    EXPECT_NEAR(w.value, VertexOracle(box.box(), f), 1e-8);
    EXPECT_TRUE(box.Contains(w.p, 1e-9));
    EXPECT_NEAR(f.dot(w.p), w.value, 1e-9);
  }
}

TEST(WorstCaseTest, EllipsoidDominatesSamples) {
  Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.Index(7));
    const AmbiguitySet e = RandomEllipsoid(rng, n);
    VectorXd f(n);
    for (int i = 0; i < n; ++i) f(i) = rng.Uniform(0.0, 10.0);
    const WorstCase w = WorstCaseExpectation(e, f);
    EXPECT_TRUE(e.Contains(w.p, 1e-9));
    EXPECT_NEAR(f.dot(w.p), w.value, 1e-6);
    double best = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < 10000; ++s) {
      const VectorXd p = SampleEllipsoidMember(rng, e.ellipsoid(), std::sqrt(rng.Uniform()));
      best = std::max(best, f.dot(p));
    }
    EXPECT_LE(best, w.value + 1e-9);
    EXPECT_GT(best, f.dot(e.ellipsoid().center) - 1e-12);
  }
}

TEST(WorstCaseTest, ReductionBracket) {
  Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.Index(8));
    const int k = 1 + static_cast<int>(rng.Index(n));
    const std::vector<int> assign = RandomAssignment(rng, n, k);
    const MatrixXd a = AggregationMatrix(assign, k);
    VectorXd f(n);
    for (int i = 0; i < n; ++i) f(i) = rng.Uniform(0.0, 10.0);
    VectorXd ft = VectorXd::Constant(k, -std::numeric_limits<double>::infinity());
    for (int i = 0; i < n; ++i) ft(assign[i]) = std::max(ft(assign[i]), f(i));
    const AmbiguitySet sets[] = {AmbiguitySet::Simplex(n), RandomBox(rng, n),
                                 RandomEllipsoid(rng, n)};
    for (const auto& set : sets) {
      const double original = WorstCaseExpectation(set, f).value;
      const double reduced = WorstCaseExpectation(Project(set, a), ft).value;
      EXPECT_GE(reduced, original - 1e-9) << set.kind();
    }
  }
}

TEST(LiftedWorstCaseTest, MatchesDirectOracle) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.Index(6));
    const int k = 1 + static_cast<int>(rng.Index(n));
    const MatrixXd a = AggregationMatrix(RandomAssignment(rng, n, k), k);
    VectorXd ft(k);
    for (int j = 0; j < k; ++j) ft(j) = rng.Uniform(0.0, 3.0);
    const AmbiguitySet box = RandomBox(rng, n);
    // f~' A p = (A' f~)' p over the original set.
    EXPECT_NEAR(LiftedWorstCase(box, a, ft).value,
                WorstCaseExpectation(box, a.transpose() * ft).value, 1e-9);
    EXPECT_NEAR(LiftedWorstCase(AmbiguitySet::Simplex(n), a, ft).value, ft.maxCoeff(), 1e-9);
  }
}

}  // namespace
}  // namespace scenred
