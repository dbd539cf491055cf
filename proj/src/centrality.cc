// src/centrality.cc

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

#include "rem/centrality.h"

#include <queue>
#include <utility>
#include <vector>

namespace rem {

namespace {

std::vector<int> BfsDistances(const GraphIndex &gi, int source) {
  std::vector<int> dist(gi.size(), -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (int y : gi.adj[x]) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    }
  }
  return dist;
}

}  // namespace

CentralityScores BrandesBetweenness(const SceneGraph &g) {
  RequireConnected(g);
  GraphIndex gi(g);
  const int n = gi.size();
  std::vector<double> vertex(n, 0.0);
  // Edge accumulator keyed by (min index, max index).
  std::map<std::pair<int, int>, double> edge;
  for (int a = 0; a < n; ++a)
    for (int b : gi.adj[a])
      if (a < b) edge[{a, b}] = 0.0;

  std::vector<std::vector<int>> preds(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<int> dist(n);
  std::vector<int> order;
  order.reserve(n);

  // Sources in fixed index order keep the floating-point sums reproducible.
  for (int s = 0; s < n; ++s) {
    for (int i = 0; i < n; ++i) {
      preds[i].clear();
      sigma[i] = 0.0;
      delta[i] = 0.0;
      dist[i] = -1;
    }
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      order.push_back(v);
      for (int w : gi.adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int w = *it;
      for (int v : preds[w]) {
        const double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
        edge[{std::min(v, w), std::max(v, w)}] += c;
        delta[v] += c;
      }
      if (w != s) vertex[w] += delta[w];
    }
  }

  // Every unordered pair was visited from both ends.
  CentralityScores out;
  for (int i = 0; i < n; ++i) out.vertex_scores[gi.ids[i]] = vertex[i] / 2.0;
  for (const auto &[key, score] : edge)
    out.edge_scores[Edge(gi.ids[key.first], gi.ids[key.second])] = score / 2.0;
  return out;
}

std::map<VertexId, double> VertexBetweenness(const SceneGraph &g) {
  return BrandesBetweenness(g).vertex_scores;
}

std::map<Edge, double> EdgeBetweenness(const SceneGraph &g) {
  return BrandesBetweenness(g).edge_scores;
}

CentralityScores BruteForceBetweenness(const SceneGraph &g) {
  if (g.num_vertices() > static_cast<std::size_t>(kBruteForceMaxVertices))
    throw Error(ErrorCode::kGraphTooLarge,
                std::to_string(g.num_vertices()) + " vertices exceeds " +
                    std::to_string(kBruteForceMaxVertices));
  RequireConnected(g);
  GraphIndex gi(g);
  const int n = gi.size();
  std::vector<std::vector<int>> dist(n);
  for (int s = 0; s < n; ++s) dist[s] = BfsDistances(gi, s);

  std::vector<double> vertex(n, 0.0);
  std::map<std::pair<int, int>, double> edge;
  for (int a = 0; a < n; ++a)
    for (int b : gi.adj[a])
      if (a < b) edge[{a, b}] = 0.0;

  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      const int d = dist[s][t];
      std::vector<std::vector<int>> paths;
      std::vector<int> current{s};
      // DFS along vertices that stay on some shortest s-t path.
      auto extend = [&](auto &&self, int v) -> void {
        if (v == t) {
          paths.push_back(current);
          return;
        }
        for (int w : gi.adj[v]) {
          if (dist[s][w] == dist[s][v] + 1 && dist[s][w] + dist[t][w] == d) {
            current.push_back(w);
            self(self, w);
            current.pop_back();
          }
        }
      };
      extend(extend, s);
      const double share = 1.0 / static_cast<double>(paths.size());
      for (const auto &p : paths) {
        for (std::size_t i = 1; i + 1 < p.size(); ++i) vertex[p[i]] += share;
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
          edge[{std::min(p[i], p[i + 1]), std::max(p[i], p[i + 1])}] += share;
      }
    }
  }

  CentralityScores out;
  for (int i = 0; i < n; ++i) out.vertex_scores[gi.ids[i]] = vertex[i];
  for (const auto &[key, score] : edge)
    out.edge_scores[Edge(gi.ids[key.first], gi.ids[key.second])] = score;
  return out;
}

}  // namespace rem
