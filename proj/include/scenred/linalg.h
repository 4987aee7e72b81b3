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

// Dense symmetric kernels: cyclic Jacobi eigendecomposition, Cholesky and
// SPD solves. All tolerances are relative to max(1, ||A||_F).

#ifndef SCENRED_LINALG_H_
#define SCENRED_LINALG_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Core>

#include "scenred/common.h"

namespace scenred {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline constexpr int kMaxJacobiSweeps = 100;

template <typename Derived>
typename Derived::Scalar ScaleOf(const Eigen::MatrixBase<Derived>& a) {
  using std::max;
  using Scalar = typename Derived::Scalar;
  return max(Scalar(1), a.norm());
}

// |A(i,j) - A(j,i)| <= rel_tol * max(1, ||A||_F) for all i, j.
template <typename Derived>
bool IsSymmetric(const Eigen::MatrixBase<Derived>& a,
                 typename Derived::Scalar rel_tol = 1e-10) {
  using std::abs;
  if (a.rows() != a.cols()) return false;
  const auto tol = rel_tol * ScaleOf(a);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      if (abs(a(i, j) - a(j, i)) > tol) return false;
    }
  }
  return true;
}

template <typename Scalar>
struct SymEigen {
  Vector<Scalar> values;   // ascending
  Matrix<Scalar> vectors;  // orthonormal columns, vectors.col(k) <-> values(k)
  int sweeps = 0;
};

// Cyclic Jacobi rotations. Throws kNonSymmetric / kNoConvergence.
template <typename Derived>
SymEigen<typename Derived::Scalar> SymmetricEigen(
    const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::sqrt;
  if (!IsSymmetric(input)) {
    throw Error(ErrorCode::kNonSymmetric, "matrix is not symmetric");
  }
  const Eigen::Index n = input.rows();
  // Symmetrize so tiny asymmetries do not bias the rotations.
  Matrix<Scalar> a = (input + input.transpose()) / Scalar(2);
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);
  const Scalar frob = a.norm();
  const Scalar target = std::numeric_limits<Scalar>::epsilon() * frob;

  auto off_norm = [&]() {
    Scalar s = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return sqrt(Scalar(2) * s);
  };

  int sweep = 0;
  while (off_norm() > target) {
    if (sweep == kMaxJacobiSweeps) {
      throw Error(ErrorCode::kNoConvergence, "Jacobi sweeps exceeded limit");
    }
    ++sweep;
    bool rotated = false;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        // Skip entries that no longer change the diagonal in floating point.
        if (sweep > 4 && abs(apq) * Scalar(1e2) + abs(a(p, p)) == abs(a(p, p)) &&
            abs(apq) * Scalar(1e2) + abs(a(q, q)) == abs(a(q, q))) {
          a(p, q) = a(q, p) = 0;
          continue;
        }
        rotated = true;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        Scalar t = Scalar(1) / (abs(theta) + sqrt(theta * theta + Scalar(1)));
        if (theta < 0) t = -t;
        const Scalar c = Scalar(1) / sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return a(x, x) < a(y, y);
  });
  SymEigen<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweep;
  return out;
}

template <typename Derived>
typename Derived::Scalar LambdaMin(const Eigen::MatrixBase<Derived>& a) {
  return SymmetricEigen(a).values(0);
}

template <typename Derived>
typename Derived::Scalar LambdaMax(const Eigen::MatrixBase<Derived>& a) {
  const auto eig = SymmetricEigen(a);
  return eig.values(eig.values.size() - 1);
}

// Lower-triangular L with L * L^T = A. A pivot <= 1e-14 * scale is rejected.
template <typename Derived>
Matrix<typename Derived::Scalar> Cholesky(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using std::sqrt;
  if (!IsSymmetric(a)) {
    throw Error(ErrorCode::kNonSymmetric, "matrix is not symmetric");
  }
  const Eigen::Index n = a.rows();
  const Scalar pivot_tol = Scalar(1e-14) * ScaleOf(a);
  Matrix<Scalar> l = Matrix<Scalar>::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Scalar d = a(j, j) - l.row(j).head(j).squaredNorm();
    if (!(d > pivot_tol)) {
      throw Error(ErrorCode::kNotPositiveDefinite,
                  "Cholesky pivot " + std::to_string(static_cast<double>(d)) +
                      " at column " + std::to_string(j));
    }
    l(j, j) = sqrt(d);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
    }
  }
  return l;
}

// Solves L * L^T * x = b given the Cholesky factor.
template <typename DerivedL, typename DerivedB>
Vector<typename DerivedL::Scalar> CholeskySolve(
    const Eigen::MatrixBase<DerivedL>& l, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedL::Scalar;
  const Eigen::Index n = l.rows();
  Vector<Scalar> y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = (b(i) - l.row(i).head(i).dot(y.head(i))) / l(i, i);
  }
  Vector<Scalar> x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    Scalar s = y(i);
    for (Eigen::Index k = i + 1; k < n; ++k) s -= l(k, i) * x(k);
    x(i) = s / l(i, i);
  }
  return x;
}

template <typename DerivedA, typename DerivedB>
Vector<typename DerivedA::Scalar> SolveSpd(const Eigen::MatrixBase<DerivedA>& a,
                                           const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "SolveSpd: size mismatch");
  }
  return CholeskySolve(Cholesky(a), b);
}

}  // namespace scenred

#endif  // SCENRED_LINALG_H_
