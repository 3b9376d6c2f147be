// Copyright 2026 The oodkit Authors.
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

#include "oodkit/error.h"

namespace oodkit {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kDtypeMismatch: return "DtypeMismatch";
    case ErrorCode::kTruncatedPayload: return "TruncatedPayload";
    case ErrorCode::kInvalidShape: return "InvalidShape";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNegativeGamma: return "NegativeGamma";
    case ErrorCode::kEmptyBatch: return "EmptyBatch";
    case ErrorCode::kNonpositiveTemperature: return "NonpositiveTemperature";
    case ErrorCode::kLabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kAssumptionViolated: return "AssumptionViolated";
    case ErrorCode::kMissingSplit: return "MissingSplit";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace oodkit
