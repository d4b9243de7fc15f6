// Copyright 2026 The QLDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qldp {

enum class ErrorCode {
  kInvalidDimension,
  kInvalidInput,
  kInvalidBudget,
  kInvalidState,
  kNotAState,
  kInvalidDerivative,
  kDimensionMismatch,
  kUnsupported,
  kNearSingular,
  kOutOfRegime,
  kUndefined,
  kDiverged,
  kRankDeficient,
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every library failure is reported through this type. `value` carries the
// offending number where one exists (an eigenvalue, a norm, a budget).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, double value = 0.0)
      : std::runtime_error(message), code_(code), value_(value) {}

  ErrorCode code() const noexcept { return code_; }
  double value() const noexcept { return value_; }

  // Out-of-regime errors are mathematical (a theorem does not apply); the
  // rest are malformed inputs or internal failures.
  bool IsRegimeError() const noexcept {
    return code_ == ErrorCode::kOutOfRegime || code_ == ErrorCode::kDiverged ||
           code_ == ErrorCode::kUndefined;
  }

 private:
  ErrorCode code_;
  double value_;
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDimension: return "invalid-dimension";
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kInvalidBudget: return "invalid-budget";
    case ErrorCode::kInvalidState: return "invalid-state";
    case ErrorCode::kNotAState: return "not-a-state";
    case ErrorCode::kInvalidDerivative: return "invalid-derivative";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kNearSingular: return "near-singular";
    case ErrorCode::kOutOfRegime: return "out-of-regime";
    case ErrorCode::kUndefined: return "undefined";
    case ErrorCode::kDiverged: return "diverged";
    case ErrorCode::kRankDeficient: return "rank-deficient";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace qldp
