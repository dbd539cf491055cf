// src/synth.cc

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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <queue>
#include <set>

#include "rem/dataset_io.h"
#include "rem/rng.h"

namespace rem {

namespace {

constexpr double kRoomSpacing = 12.0;  // meters between room centers
constexpr double kRoomHalfWidth = 4.0;
constexpr double kIntraRoomEdgeProb = 0.6;
constexpr double kCrossRoomPathProb = 0.9;

// Snap to the 1/64 m grid; sums of such values stay exact in a double.
double Snap(double x) { return std::round(x * 64.0) / 64.0; }

std::string Pad(const char *prefix, int i, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%0*d", prefix, width, i);
  return buf;
}

struct SceneDraft {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<int> room_of;  // parallel to vertices
};

SceneDraft DraftScene(Rng &rng, const SynthParams &p) {
  SceneDraft d;
  const int cols = static_cast<int>(std::ceil(std::sqrt(p.rooms_per_scene)));
  std::set<std::pair<double, double>> used;
  std::vector<std::vector<int>> members(p.rooms_per_scene);
  for (int r = 0; r < p.rooms_per_scene; ++r) {
    const double cx = (r % cols) * kRoomSpacing;
    const double cy = (r / cols) * kRoomSpacing;
    for (int i = 0; i < p.room_size; ++i) {
      double x, y;
      do {
        x = Snap(cx + (2.0 * rng.Unit() - 1.0) * kRoomHalfWidth);
        y = Snap(cy + (2.0 * rng.Unit() - 1.0) * kRoomHalfWidth);
      } while (!used.insert({x, y}).second);
      members[r].push_back(static_cast<int>(d.vertices.size()));
      d.vertices.push_back({"r" + std::to_string(r) + "_" + std::to_string(i),
                            {x, y, 0.0}});
      d.room_of.push_back(r);
    }
    // Random spanning tree keeps each room connected; extra edges make it dense.
    std::set<std::pair<int, int>> room_edges;
    for (int i = 1; i < p.room_size; ++i) {
      const int j = static_cast<int>(rng.Below(i));
      room_edges.insert({j, i});
    }
    for (int i = 0; i < p.room_size; ++i)
      for (int j = i + 1; j < p.room_size; ++j)
        if (rng.Bernoulli(kIntraRoomEdgeProb)) room_edges.insert({i, j});
    for (auto [i, j] : room_edges)
      d.edges.emplace_back(d.vertices[members[r][i]].id, d.vertices[members[r][j]].id);
  }
  // Rooms form a random tree; each tree edge is one corridor, hence a bridge.
  for (int r = 1; r < p.rooms_per_scene; ++r) {
    const int parent = static_cast<int>(rng.Below(r));
    const int a = members[r][rng.Below(p.room_size)];
    const int b = members[parent][rng.Below(p.room_size)];
    d.edges.emplace_back(d.vertices[a].id, d.vertices[b].id);
  }
  return d;
}

Panorama RandomPanorama(Rng &rng, const std::string &scene, const VertexId &vp,
                        int dim) {
  std::array<ViewCell, Panorama::kCells> cells;
  for (int v = 0; v < Panorama::kVertical; ++v) {
    for (int h = 0; h < Panorama::kHorizontal; ++h) {
      std::vector<double> f(dim);
      double norm = 0.0;
      do {
        norm = 0.0;
        for (double &x : f) {
          x = 2.0 * rng.Unit() - 1.0;
          norm += x * x;
        }
      } while (norm < 1e-6);
      norm = std::sqrt(norm);
      for (double &x : f) x = RoundSig9(x / norm);
      cells[Panorama::Index(h, v)] = {std::move(f), {scene, vp, h, v}};
    }
  }
  return Panorama(dim, std::move(cells));
}

// Shortest path with uniform tie-breaking among equally short next steps.
std::vector<VertexId> RandomShortestPath(Rng &rng, const GraphIndex &gi, int start,
                                         int goal) {
  std::vector<int> dist(gi.size(), -1);
  std::queue<int> q;
  dist[goal] = 0;
  q.push(goal);
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (int y : gi.adj[x])
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
  }
  std::vector<VertexId> path{gi.ids[start]};
  for (int cur = start; cur != goal;) {
    std::vector<int> next;
    for (int y : gi.adj[cur])
      if (dist[y] == dist[cur] - 1) next.push_back(y);
    cur = next[rng.Below(next.size())];
    path.push_back(gi.ids[cur]);
  }
  return path;
}

struct Wording {
  const char *verb;
  const char *forward;
};
constexpr Wording kWordings[] = {
    {"walk", "forward"}, {"go", "straight"}, {"head", "ahead"}};

// Tokens for the step arriving at path[j + 1].
std::vector<std::string> StepTokens(const SceneGraph &g,
                                    const std::vector<VertexId> &path, std::size_t j,
                                    const Wording &w) {
  std::vector<std::string> tokens;
  if (j > 0) {
    const double prev = HeadingBetween(g.Position(path[j - 1]), g.Position(path[j])).degrees();
    const double cur = HeadingBetween(g.Position(path[j]), g.Position(path[j + 1])).degrees();
    double turn = std::fmod(cur - prev + 540.0, 360.0) - 180.0;  // (-180, 180]
    if (turn >= 150.0 || turn <= -150.0) {
      tokens = {"turn", "around"};
    } else if (turn >= 30.0) {
      tokens = {"turn", "right"};
    } else if (turn <= -30.0) {
      tokens = {"turn", "left"};
    }
  }
  tokens.push_back(w.verb);
  tokens.push_back(w.forward);
  return tokens;
}

InstructionRecord TemplateInstruction(Rng &rng, const SceneGraph &g,
                                      const PathRecord &p, int variant) {
  InstructionRecord ins;
  ins.path_id = p.path_id;
  ins.variant = variant;
  const Wording &w = kWordings[variant % 3];
  const int steps = static_cast<int>(p.vertices.size()) - 1;
  for (int j = 0; j < steps;) {
    const int len = std::min(steps - j, rng.Between(1, 2));
    Chunk c;
    c.token_span.begin = static_cast<int>(ins.tokens.size());
    if (j > 0) ins.tokens.push_back("then");
    for (int s = j; s < j + len; ++s) {
      if (s > j) ins.tokens.push_back("and");
      for (auto &t : StepTokens(g, p.vertices, s, w)) ins.tokens.push_back(t);
    }
    if (j + len == steps) {
      ins.tokens.push_back("and");
      ins.tokens.push_back("stop");
    }
    c.token_span.end = static_cast<int>(ins.tokens.size());
    c.path_span = {j, j + len};
    ins.chunks.push_back(c);
    j += len;
  }
  return ins;
}

}  // namespace

DatasetBundle SynthGenerate(const SynthParams &p) {
  if (p.n_scenes < 1 || p.rooms_per_scene < 2 || p.room_size < 1 ||
      p.paths_per_scene < 1 || p.max_instructions < 1 || p.feature_dim < 1)
    throw Error(ErrorCode::kBadParams,
                "synth needs n_scenes>=1, rooms_per_scene>=2, room_size>=1, "
                "paths_per_scene>=1, max_instructions>=1, feature_dim>=1");
  DatasetBundle b;
  for (int s = 0; s < p.n_scenes; ++s) {
    const std::string scene_id = Pad("s", s, 3);
    Rng rng(PairSeed(p.seed, "synth", scene_id));
    SceneDraft d = DraftScene(rng, p);
    std::map<VertexId, Panorama> panoramas;
    for (const Vertex &v : d.vertices)
      panoramas.emplace(v.id, RandomPanorama(rng, scene_id, v.id, p.feature_dim));
    SceneGraph g(scene_id, d.vertices, d.edges, std::move(panoramas));
    RequireConnected(g);

    GraphIndex gi(g);
    std::vector<std::vector<int>> by_room(p.rooms_per_scene);
    for (std::size_t i = 0; i < d.vertices.size(); ++i)
      by_room[d.room_of[i]].push_back(gi.IndexOf(d.vertices[i].id));
    for (int k = 0; k < p.paths_per_scene; ++k) {
      int start, goal;
      const bool cross = p.room_size < 2 || rng.Bernoulli(kCrossRoomPathProb);
      if (cross) {
        const int ra = rng.Between(0, p.rooms_per_scene - 1);
        int rb = rng.Between(0, p.rooms_per_scene - 2);
        if (rb >= ra) ++rb;
        start = by_room[ra][rng.Below(p.room_size)];
        goal = by_room[rb][rng.Below(p.room_size)];
      } else {
        const auto &room = by_room[rng.Below(p.rooms_per_scene)];
        const int i = static_cast<int>(rng.Below(room.size()));
        int j = static_cast<int>(rng.Below(room.size() - 1));
        if (j >= i) ++j;
        start = room[i];
        goal = room[j];
      }
      PathRecord path{scene_id + "_" + Pad("p", k, 3), scene_id,
                      RandomShortestPath(rng, gi, start, goal)};
      const int variants = rng.Between(1, p.max_instructions);
      for (int v = 0; v < variants; ++v)
        b.instructions.push_back(TemplateInstruction(rng, g, path, v));
      b.paths.push_back(std::move(path));
    }
    b.scenes.emplace(scene_id, std::move(g));
  }
  ValidateBundle(b, true);
  return b;
}

PairPlan SamplePairs(std::vector<std::string> scene_ids, int n_pairs,
                     std::uint64_t seed) {
  std::sort(scene_ids.begin(), scene_ids.end());
  scene_ids.erase(std::unique(scene_ids.begin(), scene_ids.end()), scene_ids.end());
  if (n_pairs < 1) throw Error(ErrorCode::kBadParams, "n_pairs must be >= 1");
  if (scene_ids.size() < 2)
    throw Error(ErrorCode::kBadParams, "pairing needs at least 2 scenes");
  std::vector<std::pair<std::string, std::string>> all;
  for (std::size_t i = 0; i < scene_ids.size(); ++i)
    for (std::size_t j = i + 1; j < scene_ids.size(); ++j)
      all.emplace_back(scene_ids[i], scene_ids[j]);
  Rng rng(SplitMix64(seed));
  rng.Shuffle(all);
  PairPlan plan;
  plan.seed = seed;
  for (int i = 0; i < n_pairs; ++i) {
    if (static_cast<std::size_t>(i) < all.size())
      plan.pairs.push_back(all[i]);
    else
      plan.pairs.push_back(all[rng.Below(all.size())]);
  }
  return plan;
}

}  // namespace rem
