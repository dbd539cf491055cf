// include/rem/centrality.h

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

#ifndef REM_CENTRALITY_H_
#define REM_CENTRALITY_H_

#include <map>

#include "rem/nav_graph.h"

namespace rem {

// Betweenness is unnormalized and counts each unordered pair {s, t} once.
// Shortest paths are hop counts; edge weights are ignored.

struct CentralityScores {
  std::map<VertexId, double> vertex_scores;
  std::map<Edge, double> edge_scores;
};

// Brandes accumulation, one BFS per source. Throws DisconnectedGraph.
CentralityScores BrandesBetweenness(const SceneGraph &g);
std::map<VertexId, double> VertexBetweenness(const SceneGraph &g);
std::map<Edge, double> EdgeBetweenness(const SceneGraph &g);

constexpr int kBruteForceMaxVertices = 12;

// Explicitly enumerates every shortest path of every pair. Exponential in
// the worst case, so limited to kBruteForceMaxVertices (GraphTooLarge).
CentralityScores BruteForceBetweenness(const SceneGraph &g);

}  // namespace rem

#endif  // REM_CENTRALITY_H_
