// src/records.cc

// Copyright 2026  The REM Augmentation Authors

// See ../COPYING for clarification regarding multiple authors
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

#include "rem/records.h"

namespace rem {

void ValidateChunks(const InstructionRecord &instr, std::size_t path_length) {
  auto fail = [&](const std::string &rule) {
    throw Error(ErrorCode::kMisalignedChunks,
                "instruction " + instr.instruction_id() + ": " + rule);
  };
  const int n_tokens = static_cast<int>(instr.tokens.size());
  const int n_path = static_cast<int>(path_length);
  if (instr.chunks.empty()) fail("no chunks");
  int expect_begin = 0;
  int prev_first = 0;
  int prev_last = -1;
  for (std::size_t i = 0; i < instr.chunks.size(); ++i) {
    const Chunk &c = instr.chunks[i];
    const std::string at = "chunk " + std::to_string(i);
    if (c.token_span.begin != expect_begin)
      fail(at + " token span does not continue the previous chunk");
    if (c.token_span.end <= c.token_span.begin) fail(at + " has no tokens");
    if (c.token_span.end > n_tokens) fail(at + " token span out of bounds");
    expect_begin = c.token_span.end;
    if (c.path_span.first < 0 || c.path_span.last >= n_path ||
        c.path_span.first > c.path_span.last)
      fail(at + " path span out of bounds");
    if (i == 0 && c.path_span.first != 0) fail("first chunk must start the path");
    if (c.path_span.first < prev_first || c.path_span.last < prev_last)
      fail(at + " path span out of order");
    if (c.path_span.first > prev_last + 1) fail(at + " leaves a path gap");
    prev_first = c.path_span.first;
    prev_last = c.path_span.last;
  }
  if (expect_begin != n_tokens) fail("chunks do not cover every token");
  if (prev_last != n_path - 1) fail("chunks do not cover the whole path");
}

void ValidatePathSteps(const std::vector<VertexId> &vertices,
                       const SceneGraph &g, const std::string &what) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!g.HasVertex(vertices[i]))
      throw Error(ErrorCode::kInvalidPath,
                  what + ": step " + std::to_string(i) + " vertex " +
                      vertices[i] + " not in scene " + g.scene_id());
    if (i > 0 && !g.HasEdge(vertices[i - 1], vertices[i]))
      throw Error(ErrorCode::kInvalidPath,
                  what + ": step " + std::to_string(i) + " " + vertices[i - 1] +
                      "->" + vertices[i] + " is not an edge of " +
                      g.scene_id());
  }
}

}  // namespace rem
