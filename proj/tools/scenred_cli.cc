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

// scenred: generate instances, cluster scenarios, reduce and solve DRO
// problems, and run experiment grids.
//
// Exit codes: 0 ok, 2 usage or invalid input, 3 solver failure,
// 4 a report failed its own approximation certificate.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "scenred/clustering.h"
#include "scenred/dro.h"
#include "scenred/experiment.h"
#include "scenred/matrix_clustering.h"
#include "scenred/scenarios.h"

namespace {

using nlohmann::json;
using scenred::Error;
using scenred::ErrorCode;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitCertificate = 4;

class CertificateViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoConvergence:
    case ErrorCode::kCycleDetected:
    case ErrorCode::kTooManyBinaries:
    case ErrorCode::kSearchBudgetExceeded:
    case ErrorCode::kIterationLimit:
    case ErrorCode::kSolverFailure:
    case ErrorCode::kBoundsViolated:
    case ErrorCode::kRankDeficient:
    case ErrorCode::kSingularRepresentative:
    case ErrorCode::kInvalidProblem:
      return kExitSolver;
    default:
      return kExitUsage;
  }
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidSpec, "--out: cannot open '" + path + "'");
  out << text;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidSpec, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Eigen::VectorXd ToVector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json VectorJson(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

void CheckCertificate(const scenred::MetricsReport& m, const std::string& where) {
  const double slack = 1e-6 * std::max(1.0, std::abs(m.bound));
  if (!m.certificate || !(m.evaluated <= m.bound + slack)) {
    throw CertificateViolation(where + ": evaluated " + scenred::FormatDouble(m.evaluated) +
                               " exceeds bound " + scenred::FormatDouble(m.bound));
  }
}

struct Args {
  std::vector<std::string> argv;
  std::string out;

  // generate
  std::string kind = "linear";
  int scenarios = 10;
  int dimension = 4;
  int constraints = 3;
  int binaries = 0;
  double s_inc = 0.5;
  int samples = 0;
  double delta = 0.1;
  double risk_free = 0.01;
  std::uint64_t seed = 0;
  std::string scenario_file;

  // cluster / reduce
  std::string in;
  std::string instance;
  int k = 1;
  std::string method = "opt";
  std::vector<int> splits;
  std::int64_t node_limit = 10'000'000;
  bool normalize = false;
  bool cutting_plane = false;

  // solve / evaluate
  std::string solver = "auto";
  std::vector<double> x;
  std::string solution;

  // experiment
  std::vector<int> scenario_counts = {10};
  std::vector<int> ks = {2};
  std::vector<double> s_incs = {0.5};
  std::vector<std::uint64_t> seeds = {0};
  std::vector<std::string> methods = {"opt", "kmeans"};
  int parallel = 1;

  // bound
  std::vector<double> lo;
  std::vector<double> hi;
};

json ArgvJson(const Args& a) { return a.argv; }

int RunGenerate(const Args& a) {
  scenred::DroInstance instance = [&] {
    if (a.kind == "linear") {
      scenred::LinearInstanceSpec spec;
      spec.scenarios = a.scenarios;
      spec.dimension = a.dimension;
      spec.constraints = a.constraints;
      spec.binaries = a.binaries;
      spec.s_inc = a.s_inc;
      spec.samples = a.samples;
      spec.delta = a.delta;
      spec.seed = a.seed;
      return scenred::GenerateLinearInstance(spec);
    }
    scenred::PortfolioInstanceSpec spec;
    spec.scenarios = a.scenarios;
    spec.assets = a.dimension;
    spec.s_inc = a.s_inc;
    spec.risk_free = a.risk_free;
    spec.samples = a.samples;
    spec.delta = a.delta;
    spec.seed = a.seed;
    return scenred::GeneratePortfolioInstance(spec);
  }();
  std::string ref;
  if (!a.scenario_file.empty()) {
    if (instance.kind() == scenred::ObjectiveKind::kLinear) {
      scenred::SaveScenarioSet(instance.costs(), a.scenario_file);
    } else {
      scenred::SaveMatrixScenarioSet(instance.covariances(), a.scenario_file);
    }
    // The reference is resolved relative to the instance file.
    const std::filesystem::path base =
        a.out.empty() || a.out == "-" ? std::filesystem::current_path()
                                      : std::filesystem::absolute(a.out).parent_path();
    ref = std::filesystem::absolute(a.scenario_file).lexically_relative(base).generic_string();
  }
  WriteOutput(a.out, scenred::InstanceToJson(instance, ref));
  return kExitOk;
}

int RunCluster(const Args& a) {
  const scenred::ReductionMethod method = scenred::ParseMethod(a.method);
  if (a.kind == "quadratic") {
    const scenred::MatrixScenarioSet set = scenred::LoadMatrixScenarioSet(a.in);
    scenred::MatrixPartition p;
    switch (method) {
      case scenred::ReductionMethod::kOpt:
        p = scenred::OptimalMatrixPartition(set, a.k);
        break;
      case scenred::ReductionMethod::kKMeans:
        p = scenred::FrobeniusKMeans(set, a.k, a.seed);
        break;
      case scenred::ReductionMethod::kHyperrect:
        throw Error(ErrorCode::kInvalidSpec, "--method: hyperrect needs vector scenarios");
    }
    WriteOutput(a.out, scenred::MatrixPartitionToJson(p));
    return kExitOk;
  }
  const scenred::ScenarioSet set = scenred::LoadScenarioSet(a.in);
  scenred::Partition p;
  switch (method) {
    case scenred::ReductionMethod::kOpt: {
      scenred::OptimalPartitionOptions opts;
      opts.node_limit = a.node_limit;
      p = scenred::OptimalPartition(set, a.k, opts);
      break;
    }
    case scenred::ReductionMethod::kKMeans: {
      scenred::KMeansOptions opts;
      opts.seed = a.seed;
      opts.normalize = a.normalize;
      p = scenred::KMeansPartition(set, a.k, opts);
      break;
    }
    case scenred::ReductionMethod::kHyperrect: {
      const std::vector<int> splits =
          a.splits.empty() ? scenred::SplitsForK(set.ComponentMin(), set.ComponentMax(), a.k)
                           : a.splits;
      p = scenred::HyperrectPartition(set, splits).partition;
      break;
    }
  }
  WriteOutput(a.out, scenred::PartitionToJson(p));
  return kExitOk;
}

int RunReduce(const Args& a) {
  const scenred::DroInstance instance = scenred::LoadInstance(a.instance);
  scenred::ReduceOptions opts;
  opts.method = scenred::ParseMethod(a.method);
  opts.k = a.k;
  opts.seed = a.seed;
  opts.node_limit = a.node_limit;
  opts.cutting_plane = a.cutting_plane;
  const scenred::ReductionResult r = scenred::ReduceAndSolve(instance, opts);
  CheckCertificate(r.metrics, "reduce");
  json doc;
  doc["config"] = ArgvJson(a);
  doc["metrics"] = json::parse(r.metrics.ToJson());
  doc["assignment"] = r.assignment;
  doc["x_original"] = VectorJson(r.original.x);
  doc["x_reduced"] = VectorJson(r.reduced.x);
  WriteOutput(a.out, doc.dump(2) + "\n");
  return kExitOk;
}

int RunSolve(const Args& a) {
  const scenred::DroInstance instance = scenred::LoadInstance(a.instance);
  scenred::DroSolution s;
  if (a.solver == "auto") {
    s = scenred::Solve(instance);
  } else if (a.solver == "box-dual") {
    s = scenred::SolveBoxDual(instance);
  } else {
    s = scenred::SolveCuttingPlane(instance);
  }
  json doc;
  doc["config"] = ArgvJson(a);
  doc["method"] = s.method;
  doc["objective"] = s.objective;
  doc["x"] = VectorJson(s.x);
  doc["iterations"] = s.iterations;
  doc["nodes"] = s.nodes;
  doc["gap"] = s.gap;
  doc["seconds"] = s.seconds;
  WriteOutput(a.out, doc.dump(2) + "\n");
  return kExitOk;
}

int RunEvaluate(const Args& a) {
  const scenred::DroInstance instance = scenred::LoadInstance(a.instance);
  std::vector<double> x = a.x;
  if (!a.solution.empty()) {
    try {
      x = json::parse(ReadFile(a.solution)).at("x").get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParseError, "--solution: " + std::string(e.what()));
    }
  }
  if (x.empty()) throw Error(ErrorCode::kInvalidSpec, "--x or --solution is required");
  if (static_cast<int>(x.size()) != instance.num_vars()) {
    throw Error(ErrorCode::kDimensionMismatch, "--x: expected " +
                                                   std::to_string(instance.num_vars()) +
                                                   " values, got " + std::to_string(x.size()));
  }
  json doc;
  doc["config"] = ArgvJson(a);
  doc["value"] = scenred::EvaluateSolution(instance, ToVector(x));
  WriteOutput(a.out, doc.dump(2) + "\n");
  return kExitOk;
}

int RunExperiment(const Args& a) {
  scenred::ExperimentConfig c;
  c.kind = a.kind == "linear" ? scenred::ObjectiveKind::kLinear
                              : scenred::ObjectiveKind::kQuadratic;
  c.scenario_counts = a.scenario_counts;
  c.ks = a.ks;
  c.s_incs = a.s_incs;
  c.seeds = a.seeds;
  c.methods.clear();
  for (const std::string& m : a.methods) c.methods.push_back(scenred::ParseMethod(m));
  c.dimension = a.dimension;
  c.constraints = a.constraints;
  c.binaries = a.binaries;
  c.samples = a.samples;
  c.delta = a.delta;
  c.cutting_plane = a.cutting_plane;
  c.node_limit = a.node_limit;
  c.parallel = a.parallel;
  try {
    c.Validate();
  } catch (const Error& e) {
    // Validate names the field ("k: must be >= 1"); report it as the flag.
    const std::string what = e.what();
    const std::size_t colon = what.find(": ");
    throw Error(e.code(), "--" + (colon == std::string::npos ? what : what.substr(colon + 2)));
  }
  if (c.parallel > 1) {
    std::cerr << "warning: --parallel " << c.parallel
              << " runs grid points concurrently; timing columns will be noisier\n";
  }
  const std::vector<scenred::ExperimentRow> rows = scenred::RunExperiment(c);
  int failures = 0;
  for (const scenred::ExperimentRow& row : rows) {
    if (!row.ok()) {
      ++failures;
      continue;
    }
    CheckCertificate(row.metrics, "experiment row (scenarios " + std::to_string(row.scenarios) +
                                      ", K " + std::to_string(row.k_requested) + ", seed " +
                                      std::to_string(row.seed) + ", " + row.method + ")");
  }
  WriteOutput(a.out, scenred::ExperimentCsv(c, rows));
  if (failures > 0) std::cerr << "warning: " << failures << " grid points failed\n";
  return kExitOk;
}

int RunBound(const Args& a) {
  if (a.lo.size() != a.hi.size() || a.lo.size() != a.splits.size()) {
    throw Error(ErrorCode::kInvalidSplitCounts, "--lo, --hi and --splits need equal lengths");
  }
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    if (!(a.lo[i] > 0.0)) throw Error(ErrorCode::kInvalidSpec, "--lo: box must be positive");
  }
  const scenred::BoxSplit split = scenred::SplitBox(ToVector(a.lo), ToVector(a.hi), a.splits);
  std::cout << "bound " << scenred::FormatDouble(split.bound) << "\n";
  for (std::size_t i = 0; i < split.breakpoints.size(); ++i) {
    std::cout << "axis " << i << ":";
    for (double b : split.breakpoints[i]) std::cout << " " << scenred::FormatDouble(b);
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scenario reduction for distributionally robust optimization"};
  app.require_subcommand(1);
  Args a;
  a.argv.assign(argv + 1, argv + argc);

  const auto kinds = CLI::IsMember({"linear", "quadratic"});
  const auto methods = CLI::IsMember({"opt", "kmeans", "hyperrect"});
  const auto unit = CLI::Range(0.0, 1.0);

  auto* generate = app.add_subcommand("generate", "Write a synthetic DRO instance");
  generate->add_option("--kind", a.kind, "linear or quadratic")->check(kinds);
  generate->add_option("--scenarios", a.scenarios)->check(CLI::PositiveNumber);
  generate->add_option("--dimension", a.dimension, "variables, or risky assets")
      ->check(CLI::PositiveNumber);
  generate->add_option("--constraints", a.constraints)->check(CLI::NonNegativeNumber);
  generate->add_option("--binaries", a.binaries)->check(CLI::NonNegativeNumber);
  generate->add_option("--s-inc", a.s_inc)->check(unit);
  generate->add_option("--samples", a.samples)->check(CLI::NonNegativeNumber);
  generate->add_option("--delta", a.delta)->check(unit);
  generate->add_option("--risk-free", a.risk_free);
  generate->add_option("--seed", a.seed);
  generate->add_option("--scenario-file", a.scenario_file,
                       "write scenarios here and reference them from the instance");
  generate->add_option("--out", a.out);

  auto* cluster = app.add_subcommand("cluster", "Partition a scenario file");
  cluster->add_option("--in", a.in)->required()->check(CLI::ExistingFile);
  cluster->add_option("--kind", a.kind, "linear (vectors) or quadratic (matrices)")
      ->check(kinds);
  cluster->add_option("--k", a.k)->check(CLI::PositiveNumber);
  cluster->add_option("--method", a.method)->check(methods);
  cluster->add_option("--seed", a.seed);
  cluster->add_option("--splits", a.splits, "hyperrect split count per axis")->delimiter(',');
  cluster->add_option("--node-limit", a.node_limit)->check(CLI::PositiveNumber);
  cluster->add_flag("--normalize", a.normalize, "scale components before k-means");
  cluster->add_option("--out", a.out);

  auto* reduce = app.add_subcommand("reduce", "Reduce an instance and report metrics");
  reduce->add_option("--instance", a.instance)->required()->check(CLI::ExistingFile);
  reduce->add_option("--k", a.k)->check(CLI::PositiveNumber);
  reduce->add_option("--method", a.method)->check(methods);
  reduce->add_option("--seed", a.seed);
  reduce->add_option("--node-limit", a.node_limit)->check(CLI::PositiveNumber);
  reduce->add_flag("--cutting-plane", a.cutting_plane);
  reduce->add_option("--out", a.out);

  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("--instance", a.instance)->required()->check(CLI::ExistingFile);
  solve->add_option("--solver", a.solver)
      ->check(CLI::IsMember({"auto", "box-dual", "cutting-plane"}));
  solve->add_option("--out", a.out);

  auto* evaluate = app.add_subcommand("evaluate", "Worst-case expected cost of a decision");
  evaluate->add_option("--instance", a.instance)->required()->check(CLI::ExistingFile);
  auto* x_opt = evaluate->add_option("--x", a.x, "comma-separated decision")->delimiter(',');
  evaluate->add_option("--solution", a.solution, "JSON file with an \"x\" array")
      ->check(CLI::ExistingFile)
      ->excludes(x_opt);
  evaluate->add_option("--out", a.out);

  auto* experiment = app.add_subcommand("experiment", "Run a grid and write CSV");
  experiment->add_option("--kind", a.kind)->check(kinds);
  experiment->add_option("--scenarios", a.scenario_counts)->delimiter(',');
  experiment->add_option("--k", a.ks)->delimiter(',');
  experiment->add_option("--s-inc", a.s_incs)->delimiter(',');
  experiment->add_option("--seeds", a.seeds)->delimiter(',');
  experiment->add_option("--method", a.methods)->delimiter(',')->check(methods);
  experiment->add_option("--dimension", a.dimension);
  experiment->add_option("--constraints", a.constraints);
  experiment->add_option("--binaries", a.binaries);
  experiment->add_option("--samples", a.samples);
  experiment->add_option("--delta", a.delta);
  experiment->add_option("--node-limit", a.node_limit);
  experiment->add_flag("--cutting-plane", a.cutting_plane);
  experiment->add_option("--parallel", a.parallel, "concurrent grid groups");
  experiment->add_option("--out", a.out);

  auto* bound = app.add_subcommand("bound", "Hyperrectangle splitting bound");
  bound->add_option("--lo", a.lo)->required()->delimiter(',');
  bound->add_option("--hi", a.hi)->required()->delimiter(',');
  bound->add_option("--splits", a.splits)->required()->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) return RunGenerate(a);
    if (*cluster) return RunCluster(a);
    if (*reduce) return RunReduce(a);
    if (*solve) return RunSolve(a);
    if (*evaluate) return RunEvaluate(a);
    if (*experiment) return RunExperiment(a);
    if (*bound) return RunBound(a);
  } catch (const CertificateViolation& e) {
    std::cerr << "certificate violated: " << e.what() << "\n";
    return kExitCertificate;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitUsage;
}
