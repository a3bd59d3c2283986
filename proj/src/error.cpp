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

#include "mmsig/error.hpp"

namespace mmsig {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kSingularBlock: return "SingularBlock";
    case ErrorCode::kAsymmetry: return "AsymmetryError";
    case ErrorCode::kNegativeDistance: return "NegativeDistance";
    case ErrorCode::kZeroOffDiagonal: return "ZeroOffDiagonal";
    case ErrorCode::kTriangleViolation: return "TriangleViolation";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kDuplicatePoints: return "DuplicatePoints";
    case ErrorCode::kConeViolation: return "ConeViolation";
    case ErrorCode::kUnknownName: return "UnknownName";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kInvalidMeasure: return "InvalidMeasure";
    case ErrorCode::kStrictnessViolated: return "StrictnessViolated";
    case ErrorCode::kEpsilonUnderflow: return "EpsilonUnderflow";
    case ErrorCode::kDiameterTooLarge: return "DiameterTooLarge";
    case ErrorCode::kMonotonicityViolation: return "MonotonicityViolation";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kParse: return "ParseError";
  }
  return "Unknown";
}

}  // namespace mmsig
