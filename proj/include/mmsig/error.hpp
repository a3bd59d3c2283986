// Copyright 2026 The mmsig Authors.
//
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mmsig {

// Numeric values are mirrored by mmsig_status in mmsig.h; keep them in sync.
enum class ErrorCode : int {
  kInvalidInput = 1,
  kNoConvergence = 2,
  kSingularBlock = 3,
  kAsymmetry = 4,
  kNegativeDistance = 5,
  kZeroOffDiagonal = 6,
  kTriangleViolation = 7,
  kDisconnected = 8,
  kDuplicatePoints = 9,
  kConeViolation = 10,
  kUnknownName = 11,
  kBadParams = 12,
  kInvalidMeasure = 13,
  kStrictnessViolated = 14,
  kEpsilonUnderflow = 15,
  kDiameterTooLarge = 16,
  kMonotonicityViolation = 17,
  kIo = 18,
  kParse = 19,
};

const char* error_code_name(ErrorCode code) noexcept;

// All library failures are reported through this exception. `witness` holds
// the offending indices when the failure has one (a triple for triangle
// violations, a pair for cone violations, and so on).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::size_t> witness = {})
      : std::runtime_error(message), code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> witness_;
};

}  // namespace mmsig
