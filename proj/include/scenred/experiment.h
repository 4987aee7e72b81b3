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

// Grid runs of ReduceAndSolve over synthetic instances, reported as CSV.

#ifndef SCENRED_EXPERIMENT_H_
#define SCENRED_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "scenred/dro.h"

namespace scenred {

inline constexpr int kExperimentSchemaVersion = 1;

struct ExperimentConfig {
  ObjectiveKind kind = ObjectiveKind::kLinear;
  std::vector<int> scenario_counts = {10};
  std::vector<int> ks = {2};
  std::vector<double> s_incs = {0.5};
  std::vector<std::uint64_t> seeds = {0};
  std::vector<ReductionMethod> methods = {ReductionMethod::kOpt, ReductionMethod::kKMeans};
  int dimension = 4;  // cost dimension, or number of risky assets
  int constraints = 3;
  int binaries = 0;
  int samples = 0;
  double delta = 0.1;
  bool cutting_plane = false;
  std::int64_t node_limit = 10'000'000;
  int parallel = 1;

  // Throws kInvalidSpec naming the offending field.
  void Validate() const;
};

struct ExperimentRow {
  int scenarios = 0;
  int k_requested = 0;
  double s_inc = 0.0;
  std::uint64_t seed = 0;
  std::string method;
  std::string error;  // empty when the grid point succeeded
  MetricsReport metrics;

  bool ok() const { return error.empty(); }
};

// One row per (scenarios, s_inc, seed, K, method) in that nesting order.
// The original problem is solved once per (scenarios, s_inc, seed) and
// shared by all K and methods. Failures are recorded in the row.
std::vector<ExperimentRow> RunExperiment(const ExperimentConfig& config);

// The instance a grid point uses.
DroInstance ExperimentInstance(const ExperimentConfig& config, int scenarios, double s_inc,
                               std::uint64_t seed);

// Data rows followed by one mean row per (method, scenarios, K, s_inc).
// Timing-derived columns come last.
std::string ExperimentCsv(const ExperimentConfig& config, const std::vector<ExperimentRow>& rows);

}  // namespace scenred

#endif  // SCENRED_EXPERIMENT_H_
