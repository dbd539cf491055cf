// include/rem/records.h

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

#ifndef REM_RECORDS_H_
#define REM_RECORDS_H_

#include <string>
#include <vector>

#include "rem/nav_graph.h"

namespace rem {

struct PathRecord {
  std::string path_id;
  std::string scene_id;
  std::vector<VertexId> vertices;
  friend bool operator==(const PathRecord &, const PathRecord &) = default;
};

// Half-open token range [begin, end).
struct TokenSpan {
  int begin = 0;
  int end = 0;
  friend bool operator==(const TokenSpan &, const TokenSpan &) = default;
};

// Inclusive path index range [first, last].
struct PathSpan {
  int first = 0;
  int last = 0;
  friend bool operator==(const PathSpan &, const PathSpan &) = default;
};

// A sub-instruction aligned to a sub-path.
struct Chunk {
  TokenSpan token_span;
  PathSpan path_span;
  friend bool operator==(const Chunk &, const Chunk &) = default;
};

struct InstructionRecord {
  std::string path_id;
  int variant = 0;  // position in the path's instruction list
  std::vector<std::string> tokens;
  std::vector<Chunk> chunks;

  std::string instruction_id() const {
    return path_id + "_" + std::to_string(variant);
  }
  friend bool operator==(const InstructionRecord &,
                         const InstructionRecord &) = default;
};

// Chunks must be nonempty, partition the tokens contiguously from first to
// last, and have ordered path spans covering [0, path_length - 1].
// Throws MisalignedChunks naming the instruction and the broken rule.
void ValidateChunks(const InstructionRecord &instr, std::size_t path_length);

// Throws InvalidPath naming the first step that is not an edge of `g`.
void ValidatePathSteps(const std::vector<VertexId> &vertices,
                       const SceneGraph &g, const std::string &what);

}  // namespace rem

#endif  // REM_RECORDS_H_
