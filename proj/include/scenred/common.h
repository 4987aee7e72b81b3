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

#ifndef SCENRED_COMMON_H_
#define SCENRED_COMMON_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace scenred {

enum class ErrorCode {
  kNonSymmetric,
  kNoConvergence,
  kNotPositiveDefinite,
  kDimensionMismatch,
  kCycleDetected,
  kTooManyBinaries,
  kInvalidProblem,
  kInvalidSpec,
  kParseError,
  kValidationError,
  kEmptyCluster,
  kInvalidK,
  kSearchBudgetExceeded,
  kInvalidSplitCounts,
  kSingularRepresentative,
  kTooManyScenarios,
  kInvalidDelta,
  kRankDeficient,
  kInfeasibleBox,
  kBoundsViolated,
  kAmbiguityMismatch,
  kIterationLimit,
  kInfeasibleX,
  kSolverFailure,
};

std::string_view ErrorCodeName(ErrorCode code);

// Base exception for every failure raised by the library. `code()` lets
// callers (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Seeded 64-bit generator shared by every randomized routine. The uniform
// mapping is written out explicitly because std::uniform_real_distribution
// is implementation-defined.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1).
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t Index(std::uint64_t n) {
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Standard normal via Box-Muller.
  double Normal();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace scenred

#endif  // SCENRED_COMMON_H_
