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

#include "scenred/dro.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "scenred/clustering.h"
#include "scenred/linalg.h"
#include "scenred/matrix_clustering.h"

namespace scenred {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> ToStd(const VectorXd& v) { return {v.data(), v.data() + v.size()}; }

VectorXd FromStd(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string RelationName(Relation r) {
  switch (r) {
    case Relation::kLessEqual:
      return "<=";
    case Relation::kEqual:
      return "=";
    case Relation::kGreaterEqual:
      return ">=";
  }
  return "?";
}

Relation ParseRelation(const std::string& s) {
  if (s == "<=") return Relation::kLessEqual;
  if (s == "=" || s == "==") return Relation::kEqual;
  if (s == ">=") return Relation::kGreaterEqual;
  throw Error(ErrorCode::kParseError, "unknown relation '" + s + "'");
}

// JSON has no infinity; unbounded entries are written as null.
json BoundToJson(const VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::isinf(v(i))) {
      out.push_back(nullptr);
    } else {
      out.push_back(v(i));
    }
  }
  return out;
}

VectorXd BoundFromJson(const json& j, double missing) {
  VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = j[i].is_null() ? missing : j[i].get<double>();
  }
  return v;
}

void CheckAmbiguity(const AmbiguitySet& ambiguity, int scenarios) {
  if (ambiguity.atoms() != scenarios) {
    throw Error(ErrorCode::kAmbiguityMismatch,
                "ambiguity set has " + std::to_string(ambiguity.atoms()) + " atoms for " +
                    std::to_string(scenarios) + " scenarios");
  }
}

FeasibleSet PortfolioSet(const Portfolio& p, int risky) {
  const int offset = p.risk_free ? 1 : 0;
  const int n = risky + offset;
  FeasibleSet x(n);
  x.upper.setOnes();
  x.AddRow(VectorXd::Ones(n), Relation::kEqual, 1.0);
  if (p.mu.size() > 0) {
    VectorXd row(n);
    if (offset) row(0) = *p.risk_free;
    row.tail(risky) = p.mu;
    x.AddRow(row, Relation::kGreaterEqual, p.target);
  }
  return x;
}

// t >= sum_k p_k f(x, s_k), exact for linear costs and a supporting
// hyperplane at x_bar for quadratic ones. Returns (coefficients on x,
// constant).
std::pair<VectorXd, double> Cut(const DroInstance& in, const VectorXd& p, const VectorXd& x_bar) {
  const int n = in.num_vars();
  VectorXd g = VectorXd::Zero(n);
  double constant = 0.0;
  if (in.kind() == ObjectiveKind::kLinear) {
    for (int k = 0; k < in.num_scenarios(); ++k) {
      if (p(k) != 0.0) g += p(k) * in.costs()[k];
    }
    return {g, 0.0};
  }
  const int off = in.risky_offset();
  const int r = n - off;
  const VectorXd w = x_bar.tail(r);
  for (int k = 0; k < in.num_scenarios(); ++k) {
    if (p(k) == 0.0) continue;
    const VectorXd qw = in.covariances()[k] * w;
    g.tail(r) += 2.0 * p(k) * qw;
    constant -= p(k) * w.dot(qw);
  }
  return {g, constant};
}

LpSolution SolveProgram(const LinearProgram& lp) {
  return lp.num_binaries() > 0 ? SolveMilp(lp) : SolveLp(lp);
}

}  // namespace

std::string_view ObjectiveKindName(ObjectiveKind kind) {
  return kind == ObjectiveKind::kLinear ? "linear" : "quadratic";
}

FeasibleSet::FeasibleSet(int n)
    : a(0, n), rhs(0), lower(VectorXd::Zero(n)), upper(VectorXd::Constant(n, kInf)) {}

void FeasibleSet::AddRow(const VectorXd& coeffs, Relation rel, double b) {
  if (coeffs.size() != num_vars()) {
    throw Error(ErrorCode::kDimensionMismatch, "row length differs from variable count");
  }
  a.conservativeResize(a.rows() + 1, num_vars());
  a.row(a.rows() - 1) = coeffs.transpose();
  relations.push_back(rel);
  rhs.conservativeResize(rhs.size() + 1);
  rhs(rhs.size() - 1) = b;
}

LinearProgram FeasibleSet::AsProgram(const VectorXd& cost) const {
  LinearProgram lp(num_vars());
  lp.cost = cost;
  lp.a = a;
  lp.relations = relations;
  lp.rhs = rhs;
  lp.lower = lower;
  lp.upper = upper;
  lp.binary = binary;
  return lp;
}

double FeasibleSet::MaxViolation(const VectorXd& x) const {
  if (x.size() != num_vars()) return kInf;
  double worst = scenred::MaxViolation(AsProgram(VectorXd::Zero(num_vars())), x);
  for (std::size_t j = 0; j < binary.size(); ++j) {
    if (binary[j]) worst = std::max(worst, std::abs(x(j) - std::round(x(j))));
  }
  return worst;
}

DroInstance DroInstance::Linear(ScenarioSet scenarios, FeasibleSet x, AmbiguitySet ambiguity) {
  if (x.num_vars() != scenarios.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cost dimension " + std::to_string(scenarios.dimension()) + " differs from " +
                    std::to_string(x.num_vars()) + " variables");
  }
  if (x.upper.size() != x.lower.size() || x.a.cols() != x.num_vars() ||
      x.a.rows() != x.rhs.size() || x.relations.size() != static_cast<std::size_t>(x.a.rows()) ||
      (!x.binary.empty() && x.binary.size() != static_cast<std::size_t>(x.num_vars()))) {
    throw Error(ErrorCode::kDimensionMismatch, "feasible set arrays are inconsistent");
  }
  if ((x.lower.array() < 0.0).any()) {
    throw Error(ErrorCode::kInvalidSpec, "linear instances need x >= 0 (lower bounds < 0)");
  }
  CheckAmbiguity(ambiguity, scenarios.size());
  DroInstance out(ObjectiveKind::kLinear, std::move(x), std::move(ambiguity));
  out.costs_.emplace(std::move(scenarios));
  return out;
}

DroInstance DroInstance::Quadratic(MatrixScenarioSet scenarios, Portfolio portfolio,
                                   AmbiguitySet ambiguity) {
  const int r = scenarios.dimension();
  if (portfolio.mu.size() != 0 && portfolio.mu.size() != r) {
    throw Error(ErrorCode::kDimensionMismatch, "return vector differs from asset count");
  }
  if (portfolio.risk_free && portfolio.target < *portfolio.risk_free) {
    throw Error(ErrorCode::kInvalidSpec, "return target must be at least the risk-free return");
  }
  CheckAmbiguity(ambiguity, scenarios.size());
  FeasibleSet x = PortfolioSet(portfolio, r);
  DroInstance out(ObjectiveKind::kQuadratic, std::move(x), std::move(ambiguity));
  out.covariances_.emplace(std::move(scenarios));
  out.portfolio_ = std::move(portfolio);
  return out;
}

int DroInstance::num_scenarios() const {
  return kind_ == ObjectiveKind::kLinear ? costs_->size() : covariances_->size();
}

VectorXd DroInstance::ScenarioValues(const VectorXd& x) const {
  if (x.size() != num_vars()) {
    throw Error(ErrorCode::kDimensionMismatch, "x has the wrong length");
  }
  VectorXd f(num_scenarios());
  if (kind_ == ObjectiveKind::kLinear) {
    for (int k = 0; k < f.size(); ++k) f(k) = (*costs_)[k].dot(x);
  } else {
    const VectorXd w = x.tail(num_vars() - risky_offset());
    for (int k = 0; k < f.size(); ++k) f(k) = w.dot((*covariances_)[k] * w);
  }
  return f;
}

DroInstance DroInstance::WithScenarios(const std::vector<VectorXd>& costs,
                                       AmbiguitySet ambiguity) const {
  if (kind_ != ObjectiveKind::kLinear) {
    throw Error(ErrorCode::kInvalidSpec, "cost scenarios need a linear instance");
  }
  return Linear(ScenarioSet(costs), x_, std::move(ambiguity));
}

DroInstance DroInstance::WithScenarios(const std::vector<MatrixXd>& covariances,
                                       AmbiguitySet ambiguity) const {
  if (kind_ != ObjectiveKind::kQuadratic) {
    throw Error(ErrorCode::kInvalidSpec, "matrix scenarios need a quadratic instance");
  }
  return Quadratic(MatrixScenarioSet(covariances), portfolio_, std::move(ambiguity));
}

DroInstance DroInstance::WithAmbiguity(AmbiguitySet ambiguity) const {
  CheckAmbiguity(ambiguity, num_scenarios());
  DroInstance out = *this;
  out.ambiguity_ = std::move(ambiguity);
  return out;
}

std::string InstanceToJson(const DroInstance& instance, const std::string& scenario_ref) {
  json doc;
  doc["kind"] = std::string(ObjectiveKindName(instance.kind()));
  if (!scenario_ref.empty()) {
    doc["scenarios"] = scenario_ref;
  } else if (instance.kind() == ObjectiveKind::kLinear) {
    doc["scenarios"] = json::parse(ScenarioSetToJson(instance.costs()));
  } else {
    doc["scenarios"] = json::parse(MatrixSetToJson(instance.covariances()));
  }
  doc["ambiguity"] = json::parse(AmbiguityToJson(instance.ambiguity()));
  if (instance.kind() == ObjectiveKind::kLinear) {
    const FeasibleSet& x = instance.feasible_set();
    json c;
    json rows = json::array();
    json rels = json::array();
    for (Eigen::Index r = 0; r < x.a.rows(); ++r) {
      rows.push_back(ToStd(x.a.row(r)));
      rels.push_back(RelationName(x.relations[r]));
    }
    c["a"] = std::move(rows);
    c["relations"] = std::move(rels);
    c["rhs"] = ToStd(x.rhs);
    c["lower"] = BoundToJson(x.lower);
    c["upper"] = BoundToJson(x.upper);
    std::vector<int> bin;
    for (bool b : x.binary) bin.push_back(b ? 1 : 0);
    c["binary"] = bin;
    doc["constraints"] = std::move(c);
  } else {
    const Portfolio& p = instance.portfolio();
    json pj;
    pj["mu"] = ToStd(p.mu);
    pj["risk_free"] = p.risk_free ? json(*p.risk_free) : json(nullptr);
    pj["target"] = p.target;
    doc["portfolio"] = std::move(pj);
  }
  return doc.dump(2) + "\n";
}

DroInstance InstanceFromJson(std::string_view text, const std::string& base_dir) {
  try {
    const json doc = json::parse(text.begin(), text.end());
    const std::string kind = doc.at("kind").get<std::string>();
    const AmbiguitySet ambiguity = AmbiguityFromJson(doc.at("ambiguity").dump());
    const json& sc = doc.at("scenarios");
    auto path_of = [&](const json& j) {
      std::filesystem::path p(j.get<std::string>());
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      return p.string();
    };
    if (kind == "linear") {
      ScenarioSet costs = sc.is_string() ? LoadScenarioSet(path_of(sc)) : ParseScenarioJson(sc.dump());
      const json& c = doc.at("constraints");
      const int n = costs.dimension();
      FeasibleSet x(n);
      if (c.contains("lower")) x.lower = BoundFromJson(c["lower"], -kInf);
      if (c.contains("upper")) x.upper = BoundFromJson(c["upper"], kInf);
      if (x.lower.size() != n || x.upper.size() != n) {
        throw Error(ErrorCode::kDimensionMismatch, "bounds differ from the cost dimension");
      }
      const auto rows = c.value("a", std::vector<std::vector<double>>{});
      const auto rels = c.value("relations", std::vector<std::string>{});
      const auto rhs = c.value("rhs", std::vector<double>{});
      if (rels.size() != rows.size() || rhs.size() != rows.size()) {
        throw Error(ErrorCode::kDimensionMismatch, "constraint arrays differ in length");
      }
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != static_cast<std::size_t>(n)) {
          throw Error(ErrorCode::kDimensionMismatch, "constraint row " + std::to_string(r) +
                                                         " has the wrong length");
        }
        x.AddRow(FromStd(rows[r]), ParseRelation(rels[r]), rhs[r]);
      }
      const auto bin = c.value("binary", std::vector<int>{});
      if (!bin.empty()) {
        if (bin.size() != static_cast<std::size_t>(n)) {
          throw Error(ErrorCode::kDimensionMismatch, "binary flags differ from variable count");
        }
        for (int b : bin) x.binary.push_back(b != 0);
      }
      return DroInstance::Linear(std::move(costs), std::move(x), ambiguity);
    }
    if (kind == "quadratic") {
      MatrixScenarioSet cov =
          sc.is_string() ? LoadMatrixScenarioSet(path_of(sc)) : ParseMatrixJson(sc.dump());
      Portfolio p;
      if (doc.contains("portfolio")) {
        const json& pj = doc["portfolio"];
        p.mu = FromStd(pj.value("mu", std::vector<double>{}));
        if (pj.contains("risk_free") && !pj["risk_free"].is_null()) {
          p.risk_free = pj["risk_free"].get<double>();
        }
        p.target = pj.value("target", 0.0);
      }
      return DroInstance::Quadratic(std::move(cov), std::move(p), ambiguity);
    }
    throw Error(ErrorCode::kParseError, "unknown instance kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("instance JSON: ") + e.what());
  }
}

DroInstance LoadInstance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  return InstanceFromJson(buf.str(), parent.empty() ? "." : parent.string());
}

DroSolution SolveBoxDual(const DroInstance& instance) {
  const auto start = Clock::now();
  if (instance.kind() != ObjectiveKind::kLinear) {
    throw Error(ErrorCode::kInvalidSpec, "the box dual needs a linear objective");
  }
  const AmbiguitySet& amb = instance.ambiguity();
  if (amb.is_ellipsoid()) {
    throw Error(ErrorCode::kAmbiguityMismatch, "the box dual needs box or simplex ambiguity");
  }
  const int n = instance.num_vars();
  const int big_n = instance.num_scenarios();
  const VectorXd l = amb.is_box() ? amb.box().lower : VectorXd::Zero(big_n);
  const VectorXd u = amb.is_box() ? amb.box().upper : VectorXd::Ones(big_n);

  // Variables: x (n), z, lambda (N), mu (N).
  const FeasibleSet& x = instance.feasible_set();
  const int total = n + 1 + 2 * big_n;
  LinearProgram lp(total);
  lp.lower.head(n) = x.lower;
  lp.upper.head(n) = x.upper;
  lp.lower(n) = -kInf;
  lp.cost(n) = 1.0;
  lp.cost.segment(n + 1, big_n) = -l;
  lp.cost.tail(big_n) = u;
  if (!x.binary.empty()) {
    lp.binary.assign(total, false);
    std::copy(x.binary.begin(), x.binary.end(), lp.binary.begin());
  }
  for (Eigen::Index r = 0; r < x.a.rows(); ++r) {
    VectorXd row = VectorXd::Zero(total);
    row.head(n) = x.a.row(r).transpose();
    lp.AddRow(row, x.relations[r], x.rhs(r));
  }
  // s_k' x - z + lambda_k - mu_k <= 0
  for (int k = 0; k < big_n; ++k) {
    VectorXd row = VectorXd::Zero(total);
    row.head(n) = instance.costs()[k];
    row(n) = -1.0;
    row(n + 1 + k) = 1.0;
    row(n + 1 + big_n + k) = -1.0;
    lp.AddRow(row, Relation::kLessEqual, 0.0);
  }
  const LpSolution s = SolveProgram(lp);
  if (s.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kSolverFailure,
                "box dual problem is " + std::string(LpStatusName(s.status)));
  }
  DroSolution out;
  out.x = s.x.head(n);
  out.objective = s.objective;
  out.iterations = s.iterations;
  out.nodes = s.nodes;
  out.method = "box_dual";
  out.seconds = SecondsSince(start);
  return out;
}

DroSolution SolveCuttingPlane(const DroInstance& instance, const CuttingPlaneOptions& options) {
  const auto start = Clock::now();
  const int n = instance.num_vars();
  const FeasibleSet& xs = instance.feasible_set();

  // Any point of X to linearize at first.
  const LpSolution first = SolveProgram(xs.AsProgram(VectorXd::Zero(n)));
  if (first.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kSolverFailure,
                "feasible set is " + std::string(LpStatusName(first.status)));
  }

  // Master over (x, t); f >= 0 on X, so t >= 0 is valid.
  LinearProgram master = xs.AsProgram(VectorXd::Zero(n));
  master.AddVariable(1.0, 0.0, kInf);

  VectorXd x_bar = first.x;
  DroSolution best;
  best.objective = kInf;
  double lower = -kInf;
  std::int64_t nodes = 0;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const WorstCase wc = WorstCaseExpectation(instance.ambiguity(), instance.ScenarioValues(x_bar));
    if (wc.value < best.objective) {
      best.objective = wc.value;
      best.x = x_bar;
    }
    auto [g, constant] = Cut(instance, wc.p, x_bar);
    VectorXd row(n + 1);
    row.head(n) = g;
    row(n) = -1.0;
    master.AddRow(row, Relation::kLessEqual, -constant);

    const LpSolution s = SolveProgram(master);
    nodes += s.nodes;
    if (s.status != LpStatus::kOptimal) {
      throw Error(ErrorCode::kSolverFailure,
                  "cutting-plane master is " + std::string(LpStatusName(s.status)));
    }
    lower = std::max(lower, s.objective);
    x_bar = s.x.head(n);
    best.iterations = iter;
    if (best.objective - lower <= options.tolerance * std::max(1.0, std::abs(best.objective))) {
      break;
    }
    if (iter == options.max_iterations) {
      throw Error(ErrorCode::kIterationLimit,
                  "cutting plane stopped after " + std::to_string(iter) + " iterations with gap " +
                      FormatDouble(best.objective - lower) + " (upper " +
                      FormatDouble(best.objective) + ", lower " + FormatDouble(lower) + ")");
    }
  }
  best.gap = std::max(0.0, best.objective - lower);
  best.nodes = nodes;
  best.method = "cutting_plane";
  best.seconds = SecondsSince(start);
  return best;
}

DroSolution Solve(const DroInstance& instance) {
  if (instance.kind() == ObjectiveKind::kLinear && !instance.ambiguity().is_ellipsoid()) {
    return SolveBoxDual(instance);
  }
  return SolveCuttingPlane(instance);
}

double EvaluateSolution(const DroInstance& instance, const VectorXd& x) {
  const double v = instance.feasible_set().MaxViolation(x);
  if (!(v <= 1e-7)) {
    throw Error(ErrorCode::kInfeasibleX, "x violates X by " + FormatDouble(v));
  }
  return WorstCaseExpectation(instance.ambiguity(), instance.ScenarioValues(x)).value;
}

std::string_view MethodName(ReductionMethod method) {
  switch (method) {
    case ReductionMethod::kOpt:
      return "opt";
    case ReductionMethod::kKMeans:
      return "kmeans";
    case ReductionMethod::kHyperrect:
      return "hyperrect";
  }
  return "?";
}

ReductionMethod ParseMethod(std::string_view name) {
  if (name == "opt") return ReductionMethod::kOpt;
  if (name == "kmeans") return ReductionMethod::kKMeans;
  if (name == "hyperrect") return ReductionMethod::kHyperrect;
  throw Error(ErrorCode::kInvalidSpec,
              "unknown method '" + std::string(name) + "' (expected opt, kmeans or hyperrect)");
}

std::string MetricsReport::ToJson() const {
  json doc;
  doc["scenarios"] = scenarios;
  doc["K"] = k;
  doc["method"] = method;
  doc["seed"] = seed;
  doc["af"] = af;
  doc["tf"] = tf;
  doc["srf"] = srf;
  doc["alpha"] = alpha;
  doc["beta"] = beta;
  doc["guarantee"] = guarantee;
  doc["clustering_exact"] = clustering_exact;
  doc["original_objective"] = original_objective;
  doc["reduced_objective"] = reduced_objective;
  doc["evaluated"] = evaluated;
  doc["bound"] = bound;
  doc["certificate"] = certificate;
  doc["clustering_seconds"] = clustering_seconds;
  doc["original_seconds"] = original_seconds;
  doc["reduced_seconds"] = reduced_seconds;
  return doc.dump(2) + "\n";
}

ReductionResult ReduceAndSolve(const DroInstance& instance, const ReduceOptions& options,
                               const DroSolution* original) {
  auto solve = [&](const DroInstance& in) {
    return options.cutting_plane ? SolveCuttingPlane(in) : Solve(in);
  };
  ReductionResult out;
  MetricsReport& m = out.metrics;
  m.scenarios = instance.num_scenarios();
  m.method = std::string(MethodName(options.method));
  m.seed = options.seed;

  const auto cluster_start = Clock::now();
  std::vector<VectorXd> reps;
  std::vector<MatrixXd> matrix_reps;
  int k = options.k;
  if (instance.kind() == ObjectiveKind::kLinear) {
    const ScenarioSet& set = instance.costs();
    Partition p;
    switch (options.method) {
      case ReductionMethod::kOpt: {
        OptimalPartitionOptions opt;
        opt.node_limit = options.node_limit;
        opt.warm_start = KMeansPartition(set, k, {options.seed}).assignment;
        try {
          p = OptimalPartition(set, k, opt);
        } catch (const SearchBudgetExceeded& e) {
          p = e.incumbent();
          m.clustering_exact = false;
        }
        break;
      }
      case ReductionMethod::kKMeans:
        p = KMeansPartition(set, k, {options.seed});
        m.clustering_exact = false;
        break;
      case ReductionMethod::kHyperrect: {
        const VectorXd lo = set.ComponentMin();
        const VectorXd hi = set.ComponentMax();
        p = HyperrectPartition(set, SplitsForK(lo, hi, k)).partition;
        m.clustering_exact = false;
        break;
      }
    }
    k = p.k;
    m.alpha = p.alpha;
    m.beta = p.beta;
    reps = p.representatives;
    out.assignment = p.assignment;
  } else {
    const MatrixScenarioSet& set = instance.covariances();
    MatrixPartition p;
    switch (options.method) {
      case ReductionMethod::kOpt:
        p = OptimalMatrixPartition(set, k);
        break;
      case ReductionMethod::kKMeans:
        p = FrobeniusKMeans(set, k, options.seed);
        m.clustering_exact = false;
        break;
      case ReductionMethod::kHyperrect:
        throw Error(ErrorCode::kInvalidSpec, "hyperrect needs vector scenarios");
    }
    m.alpha = p.certified_alpha();
    m.beta = p.certified_beta();
    matrix_reps = p.representatives;
    out.assignment = p.assignment;
  }
  m.clustering_seconds = SecondsSince(cluster_start);
  m.k = k;
  m.guarantee = m.alpha * m.beta;
  m.srf = static_cast<double>(m.scenarios) / k;

  const MatrixXd a = AggregationMatrix(out.assignment, k);
  AmbiguitySet reduced_amb = Project(instance.ambiguity(), a);
  const DroInstance reduced = instance.kind() == ObjectiveKind::kLinear
                                  ? instance.WithScenarios(reps, std::move(reduced_amb))
                                  : instance.WithScenarios(matrix_reps, std::move(reduced_amb));

  out.original = original ? *original : solve(instance);
  out.reduced = solve(reduced);
  m.original_objective = out.original.objective;
  m.reduced_objective = out.reduced.objective;
  m.original_seconds = out.original.seconds;
  m.reduced_seconds = out.reduced.seconds;
  if (m.original_objective != 0.0) {
    m.af = m.reduced_objective / m.original_objective;
  } else {
    m.af = m.reduced_objective == 0.0 ? 1.0 : kInf;
  }
  m.tf = m.original_seconds > 0.0 ? m.reduced_seconds / m.original_seconds : 1.0;

  m.evaluated = EvaluateSolution(instance, out.reduced.x);
  m.bound = m.guarantee * m.original_objective;
  m.certificate = m.evaluated <= m.bound + 1e-6 * std::max(1.0, std::abs(m.bound));
  return out;
}

DroInstance GenerateLinearInstance(const LinearInstanceSpec& spec) {
  if (spec.dimension < 1 || spec.constraints < 0 || spec.binaries < 0 ||
      spec.binaries > spec.dimension) {
    throw Error(ErrorCode::kInvalidSpec, "invalid linear instance dimensions");
  }
  Rng rng(spec.seed);
  const int n = spec.dimension;
  VectorXd base(n);
  for (int i = 0; i < n; ++i) base(i) = rng.Uniform(1.0, 10.0);
  ScenarioSet costs = GeneratePerturbed({base, spec.s_inc, spec.scenarios, rng.engine()()});

  FeasibleSet x(n);
  x.upper.setConstant(10.0);
  if (spec.binaries > 0) {
    x.binary.assign(n, false);
    for (int j = 0; j < spec.binaries; ++j) {
      x.binary[j] = true;
      x.upper(j) = 1.0;
    }
  }
  for (int r = 0; r < spec.constraints; ++r) {
    VectorXd row(n);
    for (int j = 0; j < n; ++j) row(j) = rng.Uniform(0.1, 1.0);
    x.AddRow(row, Relation::kGreaterEqual, rng.Uniform(0.2, 0.6) * row.dot(x.upper));
  }

  const VectorXd p_star = RandomDistribution(spec.scenarios, rng);
  const VectorXd p_hat = SampleEmpirical(p_star, spec.samples, rng);
  SampledBox amb = FromSamples(p_hat, spec.samples, spec.delta);
  return DroInstance::Linear(std::move(costs), std::move(x), std::move(amb.set));
}

DroInstance GeneratePortfolioInstance(const PortfolioInstanceSpec& spec) {
  if (spec.assets < 1) throw Error(ErrorCode::kInvalidSpec, "need at least one asset");
  Rng rng(spec.seed);
  MatrixScenarioSet cov =
      GeneratePerturbedCovariances(spec.assets, spec.scenarios, spec.s_inc, rng.engine()());
  Portfolio p;
  p.mu.resize(spec.assets);
  for (int i = 0; i < spec.assets; ++i) p.mu(i) = rng.Uniform(0.02, 0.3);
  p.risk_free = spec.risk_free;
  const double top = std::min(0.25, p.mu.maxCoeff());
  p.target = rng.Uniform(std::max(spec.risk_free, 0.015), std::max(top, spec.risk_free));
  const VectorXd p_star = RandomDistribution(spec.scenarios, rng);
  const VectorXd p_hat = SampleEmpirical(p_star, spec.samples, rng);
  SampledBox amb = FromSamples(p_hat, spec.samples, spec.delta);
  return DroInstance::Quadratic(std::move(cov), std::move(p), std::move(amb.set));
}

}  // namespace scenred
