// Copyright 2026 The admmstep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ADMMSTEP_ERRORS_HPP_
#define ADMMSTEP_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace admmstep {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kNotSymmetric,
  kSingularSystem,
  kRankDeficient,
  kDegenerateProblem,
  kNoPositiveRoot,
  kCoefficientUnderflow,
  kDivergence,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kDimensionMismatch:
      return "dimension-mismatch";
    case ErrorCode::kNotSymmetric:
      return "not-symmetric";
    case ErrorCode::kSingularSystem:
      return "singular-system";
    case ErrorCode::kRankDeficient:
      return "rank-deficient";
    case ErrorCode::kDegenerateProblem:
      return "degenerate-problem";
    case ErrorCode::kNoPositiveRoot:
      return "no-positive-root";
    case ErrorCode::kCoefficientUnderflow:
      return "coefficient-underflow";
    case ErrorCode::kDivergence:
      return "divergence";
  }
  return "unknown";
}

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map them without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void Require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) Fail(code, what);
}

}  // namespace admmstep

#endif  // ADMMSTEP_ERRORS_HPP_
