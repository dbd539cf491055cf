// src/key_select.cc

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

#include "rem/key_select.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace rem {

std::int64_t RankKey(double score) { return std::llround(score * 1e9); }

std::vector<VertexId> RankVertices(const std::map<VertexId, double> &scores) {
  std::vector<std::pair<std::int64_t, VertexId>> keyed;
  for (const auto &[id, s] : scores) keyed.emplace_back(RankKey(s), id);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto &a, const auto &b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<VertexId> out;
  for (auto &[k, id] : keyed) out.push_back(std::move(id));
  return out;
}

std::vector<Edge> RankEdges(const std::map<Edge, double> &scores) {
  std::vector<std::pair<std::int64_t, Edge>> keyed;
  for (const auto &[e, s] : scores) keyed.emplace_back(RankKey(s), e);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto &a, const auto &b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<Edge> out;
  for (auto &[k, e] : keyed) out.push_back(std::move(e));
  return out;
}

int CountPathsThroughEdge(const Edge &e, std::span<const PathRecord> paths) {
  int count = 0;
  for (const PathRecord &p : paths) {
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
      const VertexId &a = p.vertices[i];
      const VertexId &b = p.vertices[i + 1];
      if ((a == e.u && b == e.v) || (a == e.v && b == e.u)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

namespace {

std::vector<Edge> FilterCandidates(const std::vector<VertexId> &vertex_rank,
                                   const std::vector<Edge> &edge_rank, int k) {
  const std::size_t kk = static_cast<std::size_t>(k);
  std::set<VertexId> top_v(vertex_rank.begin(),
                           vertex_rank.begin() + std::min(kk, vertex_rank.size()));
  std::vector<Edge> out;
  for (std::size_t i = 0; i < std::min(kk, edge_rank.size()); ++i) {
    const Edge &e = edge_rank[i];
    if (top_v.count(e.u) && top_v.count(e.v)) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Edge> CandidateKeyEdges(const CentralityScores &scores, int k) {
  if (k < 1) throw Error(ErrorCode::kBadParams, "top-k must be >= 1");
  return FilterCandidates(RankVertices(scores.vertex_scores),
                          RankEdges(scores.edge_scores), k);
}

std::vector<Edge> CandidateKeyEdges(const SceneGraph &g, int k) {
  return CandidateKeyEdges(BrandesBetweenness(g), k);
}

KeyEdge SelectKeyEdge(const SceneGraph &g, std::span<const PathRecord> paths,
                      int k) {
  return SelectKeyEdge(g, BrandesBetweenness(g), paths, k);
}

KeyEdge SelectKeyEdge(const SceneGraph &g, const CentralityScores &scores,
                      std::span<const PathRecord> paths, int k) {
  if (k < 1) throw Error(ErrorCode::kBadParams, "top-k must be >= 1");
  if (paths.empty())
    throw Error(ErrorCode::kNoKeyEdge,
                "scene " + g.scene_id() + " has no supervised paths");
  const std::set<Edge> bridges = FindBridges(g);
  const std::vector<VertexId> vertex_rank = RankVertices(scores.vertex_scores);
  const std::vector<Edge> edge_rank = RankEdges(scores.edge_scores);
  const std::size_t limit = std::max(vertex_rank.size(), edge_rank.size());

  for (std::size_t cut = static_cast<std::size_t>(k);; cut *= 2) {
    int best = 0;
    const Edge *chosen = nullptr;
    const std::vector<Edge> candidates =
        FilterCandidates(vertex_rank, edge_rank, static_cast<int>(cut));
    // Candidates are sorted, so a strict '>' keeps the smallest edge on ties.
    for (const Edge &e : candidates) {
      if (!bridges.count(e)) continue;
      const int n = CountPathsThroughEdge(e, paths);
      if (n > best) {
        best = n;
        chosen = &e;
      }
    }
    if (chosen) {
      KeyEdge key;
      key.v_s = chosen->u;
      key.v_t = chosen->v;
      key.path_count = best;
      auto rank_of = [](const auto &ranking, const auto &item) {
        return static_cast<int>(
                   std::find(ranking.begin(), ranking.end(), item) -
                   ranking.begin()) +
               1;
      };
      key.vc_rank_s = rank_of(vertex_rank, key.v_s);
      key.vc_rank_t = rank_of(vertex_rank, key.v_t);
      key.ec_rank = rank_of(edge_rank, *chosen);
      key.effective_k = static_cast<int>(cut);
      return key;
    }
    if (cut >= limit) break;
  }
  throw Error(ErrorCode::kNoKeyEdge,
              "no bridge of scene " + g.scene_id() + " is crossed by a path");
}

}  // namespace rem
