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

#include "scenred/common.h"

#include <cmath>
#include <numbers>

namespace scenred {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonSymmetric: return "NonSymmetric";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kTooManyBinaries: return "TooManyBinaries";
    case ErrorCode::kInvalidProblem: return "InvalidProblem";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kEmptyCluster: return "EmptyCluster";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kSearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::kInvalidSplitCounts: return "InvalidSplitCounts";
    case ErrorCode::kSingularRepresentative: return "SingularRepresentative";
    case ErrorCode::kTooManyScenarios: return "TooManyScenarios";
    case ErrorCode::kInvalidDelta: return "InvalidDelta";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kInfeasibleBox: return "InfeasibleBox";
    case ErrorCode::kBoundsViolated: return "BoundsViolated";
    case ErrorCode::kAmbiguityMismatch: return "AmbiguityMismatch";
    case ErrorCode::kIterationLimit: return "IterationLimit";
    case ErrorCode::kInfeasibleX: return "InfeasibleX";
    case ErrorCode::kSolverFailure: return "SolverFailure";
  }
  return "Unknown";
}

double Rng::Normal() {
  double u1 = Uniform();
  while (u1 <= 0.0) u1 = Uniform();
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace scenred
