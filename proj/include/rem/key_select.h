// include/rem/key_select.h

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

#ifndef REM_KEY_SELECT_H_
#define REM_KEY_SELECT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "rem/centrality.h"
#include "rem/records.h"

namespace rem {

constexpr int kDefaultTopK = 10;

// The key edge of a scene and the two key vertexes on it. v_s is the
// endpoint with the smaller id.
struct KeyEdge {
  VertexId v_s;
  VertexId v_t;
  int path_count = 0;
  // 1-based ranks in the betweenness orderings; diagnostics only.
  int vc_rank_s = 0;
  int vc_rank_t = 0;
  int ec_rank = 0;
  // The top-k cutoff that produced the selection (k, 2k, 4k, ...).
  int effective_k = 0;

  Edge edge() const { return Edge(v_s, v_t); }
  friend bool operator==(const KeyEdge &, const KeyEdge &) = default;
};

// Scores closer than 1e-9 rank as ties; ties resolve by ascending id.
std::int64_t RankKey(double score);
std::vector<VertexId> RankVertices(const std::map<VertexId, double> &scores);
std::vector<Edge> RankEdges(const std::map<Edge, double> &scores);

// Number of paths that traverse `e` in either direction; a path that
// crosses more than once still counts once.
int CountPathsThroughEdge(const Edge &e, std::span<const PathRecord> paths);

// Top-k edges by edge betweenness whose endpoints are both among the top-k
// vertices by vertex betweenness, sorted.
std::vector<Edge> CandidateKeyEdges(const CentralityScores &scores, int k);
std::vector<Edge> CandidateKeyEdges(const SceneGraph &g, int k = kDefaultTopK);

// The bridge candidate crossed by the most paths (ties: smallest edge).
// Widens k to 2k, 4k, ... when no bridge candidate is crossed at all.
// Throws NoKeyEdge when no bridge of the scene is crossed by any path.
KeyEdge SelectKeyEdge(const SceneGraph &g, std::span<const PathRecord> paths,
                      int k = kDefaultTopK);
KeyEdge SelectKeyEdge(const SceneGraph &g, const CentralityScores &scores,
                      std::span<const PathRecord> paths, int k = kDefaultTopK);

}  // namespace rem

#endif  // REM_KEY_SELECT_H_
