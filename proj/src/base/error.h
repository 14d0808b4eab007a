// src/base/error.h

// Copyright 2026  The fretalign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef FRETALIGN_BASE_ERROR_H_
#define FRETALIGN_BASE_ERROR_H_

#include <stdexcept>
#include <string>

namespace fretalign {

// Error categories. The numeric values are mirrored by fa_status in the
// public C header, so keep the two in sync.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kInvalidPosition = 2,
  kInfeasibleExercise = 3,
  kFileNotFound = 4,
  kUnsupportedEncoding = 5,
  kTruncatedData = 6,
  kMalformedFile = 7,
  kIo = 8,
  kTooShort = 9,
  kInsufficientExamples = 10,
  kUnknownNote = 11,
  kInfeasibleAlignment = 12,
  kConfigMismatch = 13,
  kCorruptModel = 14,
  kParse = 15,
  kMisalignedTracks = 16,
  kInternal = 17,
};

const char *ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string &what) {
  throw Error(code, what);
}

}  // namespace fretalign

#endif  // FRETALIGN_BASE_ERROR_H_
