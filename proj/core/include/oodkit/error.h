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

#ifndef OODKIT_ERROR_H_
#define OODKIT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace oodkit {

enum class ErrorCode {
  kMalformedHeader,
  kDtypeMismatch,
  kTruncatedPayload,
  kInvalidShape,
  kNonFinite,
  kIoFailure,
  kSchemaViolation,
  kShapeMismatch,
  kNegativeGamma,
  kEmptyBatch,
  kNonpositiveTemperature,
  kLabelOutOfRange,
  kEmptySet,
  kAssumptionViolated,
  kMissingSplit,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library. The message always names the
// offending field, file or shape pair.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace oodkit

#endif  // OODKIT_ERROR_H_
