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

#include "scenred/lp.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <utility>

#include "scenred/common.h"

namespace scenred {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string_view LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

LinearProgram::LinearProgram(int num_vars, Sense s)
    : sense(s),
      cost(VectorXd::Zero(num_vars)),
      a(0, num_vars),
      rhs(0),
      lower(VectorXd::Zero(num_vars)),
      upper(VectorXd::Constant(num_vars, kInf)) {}

int LinearProgram::num_binaries() const {
  return static_cast<int>(std::count(binary.begin(), binary.end(), true));
}

int LinearProgram::AddVariable(double c, double lo, double hi, bool is_binary) {
  const int n = num_vars();
  cost.conservativeResize(n + 1);
  cost(n) = c;
  lower.conservativeResize(n + 1);
  lower(n) = lo;
  upper.conservativeResize(n + 1);
  upper(n) = hi;
  a.conservativeResize(a.rows(), n + 1);
  a.col(n).setZero();
  if (is_binary || !binary.empty()) {
    binary.resize(static_cast<std::size_t>(n), false);
    binary.push_back(is_binary);
  }
  return n;
}

void LinearProgram::AddRow(const VectorXd& coeffs, Relation rel, double b) {
  if (coeffs.size() != num_vars()) {
    throw Error(ErrorCode::kInvalidProblem, "row length does not match variable count");
  }
  const Eigen::Index r = a.rows();
  a.conservativeResize(r + 1, Eigen::NoChange);
  a.row(r) = coeffs.transpose();
  rhs.conservativeResize(r + 1);
  rhs(r) = b;
  relations.push_back(rel);
}

void LinearProgram::Validate() const {
  const int n = num_vars();
  if (a.cols() != n || lower.size() != n || upper.size() != n ||
      rhs.size() != a.rows() || static_cast<Eigen::Index>(relations.size()) != a.rows()) {
    throw Error(ErrorCode::kInvalidProblem, "inconsistent dimensions");
  }
  if (!binary.empty() && static_cast<int>(binary.size()) != n) {
    throw Error(ErrorCode::kInvalidProblem, "binary flags do not match variable count");
  }
  if (!cost.allFinite() || !a.allFinite() || !rhs.allFinite()) {
    throw Error(ErrorCode::kInvalidProblem, "non-finite coefficient");
  }
  for (int j = 0; j < n; ++j) {
    if (std::isnan(lower(j)) || std::isnan(upper(j)) || lower(j) > upper(j) ||
        lower(j) == kInf || upper(j) == -kInf) {
      throw Error(ErrorCode::kInvalidProblem,
                  "invalid bounds on variable " + std::to_string(j));
    }
    if (!binary.empty() && binary[j] && (lower(j) < 0.0 || upper(j) > 1.0)) {
      throw Error(ErrorCode::kInvalidProblem,
                  "binary variable " + std::to_string(j) + " has bounds outside [0,1]");
    }
  }
}

double MaxViolation(const LinearProgram& p, const VectorXd& x) {
  double worst = 0.0;
  const VectorXd ax = p.a * x;
  for (int i = 0; i < p.num_rows(); ++i) {
    const double scale = std::max(1.0, std::abs(p.rhs(i)));
    double v = 0.0;
    switch (p.relations[i]) {
      case Relation::kLessEqual:
        v = ax(i) - p.rhs(i);
        break;
      case Relation::kGreaterEqual:
        v = p.rhs(i) - ax(i);
        break;
      case Relation::kEqual:
        v = std::abs(ax(i) - p.rhs(i));
        break;
    }
    worst = std::max(worst, v / scale);
  }
  for (int j = 0; j < p.num_vars(); ++j) {
    if (std::isfinite(p.lower(j)))
      worst = std::max(worst, (p.lower(j) - x(j)) / std::max(1.0, std::abs(p.lower(j))));
    if (std::isfinite(p.upper(j)))
      worst = std::max(worst, (x(j) - p.upper(j)) / std::max(1.0, std::abs(p.upper(j))));
  }
  return worst;
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;

enum class VarState { kBasic, kAtLower, kAtUpper, kFree };

// Tableau simplex over  A x + s (+ art) = b  with bounds on every column.
// Columns: [structural (n) | slack (m) | artificial (m)]. The slack block of
// the tableau is B^-1 because slack columns are the identity.
class BoundedSimplex {
 public:
  explicit BoundedSimplex(const LinearProgram& p)
      : p_(p), n_(p.num_vars()), m_(p.num_rows()), total_(n_ + 2 * m_) {
    lo_.resize(total_);
    up_.resize(total_);
    lo_.head(n_) = p.lower;
    up_.head(n_) = p.upper;
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      switch (p.relations[i]) {
        case Relation::kLessEqual:
          lo_(s) = 0.0;
          up_(s) = kInf;
          break;
        case Relation::kGreaterEqual:
          lo_(s) = -kInf;
          up_(s) = 0.0;
          break;
        case Relation::kEqual:
          lo_(s) = 0.0;
          up_(s) = 0.0;
          break;
      }
    }
    double s = 1.0;
    for (int i = 0; i < m_; ++i) s = std::max(s, std::abs(p.rhs(i)));
    for (int j = 0; j < n_; ++j) {
      if (std::isfinite(p.lower(j))) s = std::max(s, std::abs(p.lower(j)));
      if (std::isfinite(p.upper(j))) s = std::max(s, std::abs(p.upper(j)));
    }
    feas_tol_ = 1e-9 * s;
    cost_scale_ = n_ > 0 ? std::max(1.0, p.cost.cwiseAbs().maxCoeff()) : 1.0;
  }

  LpSolution Solve() {
    LpSolution out;
    const double sign = p_.sense == Sense::kMaximize ? -1.0 : 1.0;
    InitPhaseOne();

    VectorXd phase_one_cost = VectorXd::Zero(total_);
    bool any_artificial = false;
    for (int i = 0; i < m_; ++i) {
      if (up_(n_ + m_ + i) > 0.0) {
        phase_one_cost(n_ + m_ + i) = 1.0;
        any_artificial = true;
      }
    }
    if (any_artificial) {
      const bool bounded = Run(phase_one_cost, /*allow_artificial=*/true);
      (void)bounded;  // phase one is bounded below by zero
      RecomputeBasics();
      double infeasibility = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (IsArtificial(basis_[i])) infeasibility += std::max(0.0, xb_(i));
      }
      for (int i = 0; i < m_; ++i) {
        const int art = n_ + m_ + i;
        if (state_[art] != VarState::kBasic) infeasibility += std::max(0.0, val_(art));
      }
      if (infeasibility > feas_tol_ * std::max(1, m_)) {
        out.status = LpStatus::kInfeasible;
        out.iterations = iterations_;
        return out;
      }
      DriveOutArtificials();
    }
    for (int i = 0; i < m_; ++i) {
      const int art = n_ + m_ + i;
      lo_(art) = up_(art) = 0.0;
      if (state_[art] != VarState::kBasic) {
        state_[art] = VarState::kAtLower;
        val_(art) = 0.0;
      }
    }

    VectorXd phase_two_cost = VectorXd::Zero(total_);
    phase_two_cost.head(n_) = sign * p_.cost;
    const bool bounded = Run(phase_two_cost, /*allow_artificial=*/false);
    out.iterations = iterations_;
    if (!bounded) {
      out.status = LpStatus::kUnbounded;
      return out;
    }
    RecomputeBasics();
    VectorXd x(n_);
    for (int j = 0; j < n_; ++j) x(j) = val_(j);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x(basis_[i]) = xb_(i);
    }
    for (int j = 0; j < n_; ++j) {
      if (x(j) < p_.lower(j) && x(j) > p_.lower(j) - feas_tol_ * 10) x(j) = p_.lower(j);
      if (x(j) > p_.upper(j) && x(j) < p_.upper(j) + feas_tol_ * 10) x(j) = p_.upper(j);
    }
    out.status = LpStatus::kOptimal;
    out.x = std::move(x);
    out.objective = p_.cost.dot(out.x);
    return out;
  }

 private:
  bool IsArtificial(int j) const { return j >= n_ + m_; }

  void InitPhaseOne() {
    state_.assign(total_, VarState::kAtLower);
    val_ = VectorXd::Zero(total_);
    for (int j = 0; j < n_; ++j) {
      if (std::isfinite(lo_(j))) {
        state_[j] = VarState::kAtLower;
        val_(j) = lo_(j);
      } else if (std::isfinite(up_(j))) {
        state_[j] = VarState::kAtUpper;
        val_(j) = up_(j);
      } else {
        state_[j] = VarState::kFree;
        val_(j) = 0.0;
      }
    }
    const VectorXd r = p_.rhs - p_.a * val_.head(n_);
    t_ = MatrixXd::Zero(m_, total_);
    t_.leftCols(n_) = p_.a;
    xb_.resize(m_);
    basis_.assign(m_, -1);
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      const int art = n_ + m_ + i;
      t_(i, s) = 1.0;
      if (r(i) >= lo_(s) && r(i) <= up_(s)) {
        basis_[i] = s;
        state_[s] = VarState::kBasic;
        xb_(i) = r(i);
        t_(i, art) = 1.0;
        lo_(art) = up_(art) = 0.0;
        state_[art] = VarState::kAtLower;
      } else {
        // Slack parks at its finite bound; the artificial absorbs the rest.
        const double slack_val = r(i) < lo_(s) ? lo_(s) : up_(s);
        state_[s] = r(i) < lo_(s) ? VarState::kAtLower : VarState::kAtUpper;
        val_(s) = slack_val;
        const double resid = r(i) - slack_val;
        const double sigma = resid >= 0.0 ? 1.0 : -1.0;
        t_(i, art) = sigma;
        lo_(art) = 0.0;
        up_(art) = kInf;
        basis_[i] = art;
        state_[art] = VarState::kBasic;
        xb_(i) = std::abs(resid);
        // Row i of B^-1 is sigma * e_i.
        t_.row(i) *= sigma;
      }
    }
  }

  // xb = B^-1 b - sum_{nonbasic} T_j val_j, with B^-1 read off the slack block.
  void RecomputeBasics() {
    VectorXd nb = VectorXd::Zero(total_);
    for (int j = 0; j < total_; ++j) {
      if (state_[j] != VarState::kBasic) nb(j) = val_(j);
    }
    // T = B^-1 [A I Art]; T * nb covers A x_N + s_N + art_N after B^-1.
    xb_ = t_.middleCols(n_, m_) * p_.rhs - t_ * nb;
  }

  void DriveOutArtificials() {
    for (int r = 0; r < m_; ++r) {
      if (!IsArtificial(basis_[r])) continue;
      int best = -1;
      double best_abs = kPivotTol;
      for (int j = 0; j < n_ + m_; ++j) {
        if (state_[j] == VarState::kBasic) continue;
        if (std::abs(t_(r, j)) > best_abs) {
          best_abs = std::abs(t_(r, j));
          best = j;
        }
      }
      if (best < 0) continue;  // redundant row; artificial stays basic at 0
      const int leaving = basis_[r];
      Pivot(r, best);
      state_[leaving] = VarState::kAtLower;
      val_(leaving) = 0.0;
      RecomputeBasics();
    }
  }

  void Pivot(int r, int j) {
    const double piv = t_(r, j);
    t_.row(r) /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, j);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = j;
    state_[j] = VarState::kBasic;
  }

  // Returns false when the objective is unbounded below.
  bool Run(const VectorXd& cost, bool allow_artificial) {
    const double opt_tol =
        1e-9 * (total_ > 0 ? std::max(cost_scale_, cost.cwiseAbs().maxCoeff()) : 1.0);
    const std::int64_t degenerate_limit = 3LL * (m_ + n_);
    const std::int64_t iteration_cap = 50000 + 200LL * (m_ + total_);
    std::int64_t streak = 0;
    bool bland = false;
    std::int64_t local = 0;
    while (true) {
      if (++local > iteration_cap) {
        throw Error(ErrorCode::kCycleDetected, "simplex iteration cap reached");
      }
      VectorXd cb(m_);
      for (int i = 0; i < m_; ++i) cb(i) = cost(basis_[i]);
      const VectorXd d = cost - t_.transpose() * cb;

      int enter = -1;
      double enter_score = 0.0;
      for (int j = 0; j < total_; ++j) {
        if (state_[j] == VarState::kBasic) continue;
        if (!allow_artificial && IsArtificial(j)) continue;
        if (lo_(j) == up_(j)) continue;
        bool eligible = false;
        switch (state_[j]) {
          case VarState::kAtLower:
            eligible = d(j) < -opt_tol;
            break;
          case VarState::kAtUpper:
            eligible = d(j) > opt_tol;
            break;
          case VarState::kFree:
            eligible = std::abs(d(j)) > opt_tol;
            break;
          case VarState::kBasic:
            break;
        }
        if (!eligible) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (std::abs(d(j)) > enter_score) {
          enter_score = std::abs(d(j));
          enter = j;
        }
      }
      if (enter < 0) return true;

      const double dir = d(enter) < 0.0 ? 1.0 : -1.0;
      const VectorXd alpha = dir * t_.col(enter);
      double theta = kInf;
      int leave_row = -1;
      for (int i = 0; i < m_; ++i) {
        const int b = basis_[i];
        double limit = kInf;
        if (alpha(i) > kPivotTol && std::isfinite(lo_(b))) {
          limit = std::max(0.0, (xb_(i) - lo_(b)) / alpha(i));
        } else if (alpha(i) < -kPivotTol && std::isfinite(up_(b))) {
          limit = std::max(0.0, (up_(b) - xb_(i)) / -alpha(i));
        }
        if (!std::isfinite(limit)) continue;
        bool take = false;
        if (limit < theta - 1e-12) {
          take = true;
        } else if (limit <= theta + 1e-12 && leave_row >= 0) {
          take = bland ? b < basis_[leave_row]
                       : std::abs(alpha(i)) > std::abs(alpha(leave_row));
        }
        if (take) {
          theta = std::min(theta, limit);
          leave_row = i;
        }
      }
      const double flip = up_(enter) - lo_(enter);
      const bool bound_flip = std::isfinite(flip) && flip <= theta;
      if (bound_flip) theta = flip;
      if (!std::isfinite(theta)) return false;

      ++iterations_;
      streak = theta <= kDegenerateStep ? streak + 1 : 0;
      if (streak > degenerate_limit) bland = true;
      if (streak == 0) bland = false;

      xb_ -= theta * alpha;
      const double entering_value = val_(enter) + dir * theta;
      if (bound_flip) {
        if (state_[enter] == VarState::kAtLower) {
          state_[enter] = VarState::kAtUpper;
          val_(enter) = up_(enter);
        } else {
          state_[enter] = VarState::kAtLower;
          val_(enter) = lo_(enter);
        }
        continue;
      }
      const int leaving = basis_[leave_row];
      if (alpha(leave_row) > 0.0) {
        state_[leaving] = VarState::kAtLower;
        val_(leaving) = lo_(leaving);
      } else {
        state_[leaving] = VarState::kAtUpper;
        val_(leaving) = up_(leaving);
      }
      Pivot(leave_row, enter);
      xb_(leave_row) = entering_value;
    }
  }

  const LinearProgram& p_;
  const int n_;
  const int m_;
  const int total_;
  VectorXd lo_, up_, val_, xb_;
  MatrixXd t_;
  std::vector<int> basis_;
  std::vector<VarState> state_;
  double feas_tol_ = 1e-9;
  double cost_scale_ = 1.0;
  std::int64_t iterations_ = 0;
};

}  // namespace

LpSolution SolveLp(const LinearProgram& p) {
  p.Validate();
  return BoundedSimplex(p).Solve();
}

namespace {

constexpr double kIntegralityTol = 1e-7;

struct Node {
  double bound;
  std::int64_t order;
  VectorXd lower;
  VectorXd upper;
  LpSolution relaxation;
};

struct NodeAfter {
  bool operator()(const Node& x, const Node& y) const {
    if (x.bound != y.bound) return x.bound > y.bound;
    return x.order > y.order;
  }
};

}  // namespace

LpSolution SolveMilp(const LinearProgram& p) {
  p.Validate();
  const int num_bin = p.num_binaries();
  if (num_bin > kMaxBinaries) {
    throw Error(ErrorCode::kTooManyBinaries,
                std::to_string(num_bin) + " binaries exceed the cap of " +
                    std::to_string(kMaxBinaries));
  }
  if (num_bin == 0) return SolveLp(p);

  const double sign = p.sense == Sense::kMaximize ? -1.0 : 1.0;
  LinearProgram work = p;
  for (int j = 0; j < p.num_vars(); ++j) {
    if (p.binary[j]) {
      work.lower(j) = std::ceil(std::max(0.0, p.lower(j)) - kIntegralityTol);
      work.upper(j) = std::floor(std::min(1.0, p.upper(j)) + kIntegralityTol);
      if (work.lower(j) > work.upper(j)) return LpSolution{};
    }
  }

  std::int64_t iterations = 0;
  std::int64_t nodes = 0;
  std::int64_t order = 0;
  auto solve_node = [&](const VectorXd& lo, const VectorXd& up) {
    work.lower = lo;
    work.upper = up;
    LpSolution s = BoundedSimplex(work).Solve();
    iterations += s.iterations;
    ++nodes;
    return s;
  };

  std::priority_queue<Node, std::vector<Node>, NodeAfter> open;
  {
    LpSolution root = solve_node(work.lower, work.upper);
    if (root.status != LpStatus::kOptimal) {
      root.nodes = nodes;
      return root;
    }
    open.push(Node{sign * root.objective, order++, work.lower, work.upper, root});
  }

  bool have_incumbent = false;
  double incumbent = kInf;
  VectorXd inc_lower, inc_upper;
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (have_incumbent &&
        node.bound >= incumbent - 1e-9 * std::max(1.0, std::abs(incumbent))) {
      break;  // best-bound order: nothing left can improve
    }
    int branch = -1;
    double best_frac = 0.0;
    for (int j = 0; j < p.num_vars(); ++j) {
      if (!p.binary[j]) continue;
      const double v = node.relaxation.x(j);
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > kIntegralityTol && frac > best_frac + 1e-15) {
        best_frac = frac;
        branch = j;
      }
    }
    if (branch < 0) {
      have_incumbent = true;
      incumbent = node.bound;
      inc_lower = node.lower;
      inc_upper = node.upper;
      // Pin the (integral) binaries so the final re-solve is exact.
      for (int j = 0; j < p.num_vars(); ++j) {
        if (p.binary[j]) {
          inc_lower(j) = inc_upper(j) = std::round(node.relaxation.x(j));
        }
      }
      continue;
    }
    for (double fixed : {0.0, 1.0}) {
      VectorXd lo = node.lower;
      VectorXd up = node.upper;
      lo(branch) = up(branch) = fixed;
      if (fixed < node.lower(branch) || fixed > node.upper(branch)) continue;
      LpSolution child = solve_node(lo, up);
      if (child.status == LpStatus::kUnbounded) {
        child.nodes = nodes;
        child.iterations = iterations;
        return child;
      }
      if (child.status != LpStatus::kOptimal) continue;
      const double bound = sign * child.objective;
      if (have_incumbent &&
          bound >= incumbent - 1e-9 * std::max(1.0, std::abs(incumbent))) {
        continue;
      }
      open.push(Node{bound, order++, std::move(lo), std::move(up), std::move(child)});
    }
  }

  LpSolution out;
  if (!have_incumbent) {
    out.status = LpStatus::kInfeasible;
  } else {
    out = solve_node(inc_lower, inc_upper);
  }
  out.iterations = iterations;
  out.nodes = nodes;
  return out;
}

}  // namespace scenred
