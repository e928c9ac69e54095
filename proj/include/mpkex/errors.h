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

#ifndef MPKEX_ERRORS_H_
#define MPKEX_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mpkex {

// Every failure the library reports carries one of these codes. Wire decoding
// in particular guarantees that malformed input maps onto a named code.
enum class ErrorCode {
  kInvalidParams,
  kZeroInverse,
  kInvalidSubrange,
  kDegreeOverflow,
  kDimensionMismatch,
  kSearchLimitExceeded,
  kInstanceTooLarge,
  kMalformedMessage,
  kExhaustedRestarts,
  kOracleTooLarge,
  kBadMagic,
  kVersionUnsupported,
  kUnknownMessageType,
  kParamMismatch,
  kElementOutOfRange,
  kTruncatedFrame,
  kLengthMismatch,
  kTransport,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mpkex

#endif  // MPKEX_ERRORS_H_
