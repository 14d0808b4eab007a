// src/base/error.cc

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

#include "base/error.h"

namespace fretalign {

const char *ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "ok";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kInvalidPosition: return "invalid fret position";
    case ErrorCode::kInfeasibleExercise: return "infeasible exercise";
    case ErrorCode::kFileNotFound: return "file not found";
    case ErrorCode::kUnsupportedEncoding: return "unsupported encoding";
    case ErrorCode::kTruncatedData: return "truncated data";
    case ErrorCode::kMalformedFile: return "malformed file";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kTooShort: return "input too short";
    case ErrorCode::kInsufficientExamples: return "insufficient examples";
    case ErrorCode::kUnknownNote: return "unknown note";
    case ErrorCode::kInfeasibleAlignment: return "infeasible alignment";
    case ErrorCode::kConfigMismatch: return "configuration mismatch";
    case ErrorCode::kCorruptModel: return "corrupt model";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kMisalignedTracks: return "misaligned tracks";
    case ErrorCode::kInternal: return "internal error";
  }
  return "unknown error";
}

}  // namespace fretalign
