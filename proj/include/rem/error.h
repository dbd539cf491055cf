// include/rem/error.h

// Copyright 2026  The REM Augmentation Authors

// See ../../COPYING for clarification regarding multiple authors
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

#ifndef REM_ERROR_H_
#define REM_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace rem {

enum class ErrorCode {
  kDegenerateDirection,
  kUnknownEdge,
  kUnknownVertex,
  kNotABridge,
  kDisconnectedGraph,
  kGraphTooLarge,
  kNoKeyEdge,
  kKeyEdgeInvalid,
  kSceneIdCollision,
  kAlreadyAligned,
  kNotAligned,
  kKReplaceOutOfRange,
  kFeatureDimMismatch,
  kMisalignedChunks,
  kInvalidJunction,
  kInvalidSplice,
  kNoDonors,
  kParseError,
  kInvariantViolation,
  kBadParams,
  kInvalidPath,
  kBadLengths,
  kEmptyPath,
  kIo,
};

std::string_view ErrorName(ErrorCode code);

// Every library failure is reported as an Error carrying a code; what()
// is "<CodeName>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &detail)
      : std::runtime_error(std::string(ErrorName(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}
  ErrorCode code() const { return code_; }
  const std::string &detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace rem

#endif  // REM_ERROR_H_
