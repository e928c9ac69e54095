/*
Copyright 2026 The mpkex Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "mpkex/errors.h"

namespace mpkex {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kZeroInverse: return "ZeroInverse";
    case ErrorCode::kInvalidSubrange: return "InvalidSubrange";
    case ErrorCode::kDegreeOverflow: return "DegreeOverflow";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kSearchLimitExceeded: return "SearchLimitExceeded";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kMalformedMessage: return "MalformedMessage";
    case ErrorCode::kExhaustedRestarts: return "ExhaustedRestarts";
    case ErrorCode::kOracleTooLarge: return "OracleTooLarge";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kVersionUnsupported: return "VersionUnsupported";
    case ErrorCode::kUnknownMessageType: return "UnknownMessageType";
    case ErrorCode::kParamMismatch: return "ParamMismatch";
    case ErrorCode::kElementOutOfRange: return "ElementOutOfRange";
    case ErrorCode::kTruncatedFrame: return "TruncatedFrame";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kTransport: return "Transport";
  }
  return "Unknown";
}

}  // namespace mpkex
