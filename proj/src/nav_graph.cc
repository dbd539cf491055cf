// src/nav_graph.cc

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

#include "rem/nav_graph.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace rem {

std::string_view ErrorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerateDirection: return "DegenerateDirection";
    case ErrorCode::kUnknownEdge: return "UnknownEdge";
    case ErrorCode::kUnknownVertex: return "UnknownVertex";
    case ErrorCode::kNotABridge: return "NotABridge";
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kGraphTooLarge: return "GraphTooLarge";
    case ErrorCode::kNoKeyEdge: return "NoKeyEdge";
    case ErrorCode::kKeyEdgeInvalid: return "KeyEdgeInvalid";
    case ErrorCode::kSceneIdCollision: return "SceneIdCollision";
    case ErrorCode::kAlreadyAligned: return "AlreadyAligned";
    case ErrorCode::kNotAligned: return "NotAligned";
    case ErrorCode::kKReplaceOutOfRange: return "KReplaceOutOfRange";
    case ErrorCode::kFeatureDimMismatch: return "FeatureDimMismatch";
    case ErrorCode::kMisalignedChunks: return "MisalignedChunks";
    case ErrorCode::kInvalidJunction: return "InvalidJunction";
    case ErrorCode::kInvalidSplice: return "InvalidSplice";
    case ErrorCode::kNoDonors: return "NoDonors";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kInvalidPath: return "InvalidPath";
    case ErrorCode::kBadLengths: return "BadLengths";
    case ErrorCode::kEmptyPath: return "EmptyPath";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

double Distance(const Vec3 &a, const Vec3 &b) {
  const Vec3 d = a - b;
  return std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
}

Edge::Edge(VertexId a, VertexId b) {
  if (b < a) std::swap(a, b);
  u = std::move(a);
  v = std::move(b);
}

Panorama::Panorama(int feature_dim, std::array<ViewCell, kCells> cells)
    : feature_dim_(feature_dim), cells_(std::move(cells)) {
  if (feature_dim_ <= 0)
    throw Error(ErrorCode::kInvariantViolation,
                "panorama feature_dim must be positive");
  for (const ViewCell &c : cells_) {
    if (static_cast<int>(c.feature.size()) != feature_dim_)
      throw Error(ErrorCode::kInvariantViolation,
                  "panorama cell feature length " +
                      std::to_string(c.feature.size()) + " != feature_dim " +
                      std::to_string(feature_dim_));
    if (c.provenance.h < 0 || c.provenance.h >= kHorizontal ||
        c.provenance.v < 0 || c.provenance.v >= kVertical)
      throw Error(ErrorCode::kInvariantViolation,
                  "panorama cell provenance index out of range");
  }
}

Panorama Panorama::Placeholder(const std::string &scene_id,
                               const VertexId &viewpoint, int feature_dim) {
  std::array<ViewCell, kCells> cells;
  for (int v = 0; v < kVertical; ++v) {
    for (int h = 0; h < kHorizontal; ++h) {
      ViewCell &c = cells[Index(h, v)];
      c.feature.assign(feature_dim, 0.0);
      c.provenance = {scene_id, viewpoint, h, v};
    }
  }
  return Panorama(feature_dim, std::move(cells));
}

SceneGraph::SceneGraph(std::string scene_id, const std::vector<Vertex> &vertices,
                       const std::vector<Edge> &edges,
                       std::map<VertexId, Panorama> panoramas)
    : scene_id_(std::move(scene_id)), panoramas_(std::move(panoramas)) {
  for (const Vertex &v : vertices) {
    if (!std::isfinite(v.position.x) || !std::isfinite(v.position.y) ||
        !std::isfinite(v.position.z))
      throw Error(ErrorCode::kInvariantViolation,
                  "vertex " + v.id + " has a non-finite position");
    if (!vertices_.emplace(v.id, v).second)
      throw Error(ErrorCode::kInvariantViolation,
                  "duplicate vertex id " + v.id + " in scene " + scene_id_);
    adjacency_[v.id];
  }
  for (const Edge &e : edges) {
    if (e.u == e.v)
      throw Error(ErrorCode::kInvariantViolation,
                  "self-loop at " + e.u + " in scene " + scene_id_);
    if (!HasVertex(e.u) || !HasVertex(e.v))
      throw Error(ErrorCode::kInvariantViolation,
                  "edge " + e.ToString() + " has an unknown endpoint");
    if (!edges_.insert(e).second)
      throw Error(ErrorCode::kInvariantViolation,
                  "duplicate edge " + e.ToString() + " in scene " + scene_id_);
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto &[id, nbrs] : adjacency_) std::sort(nbrs.begin(), nbrs.end());
  for (const auto &[id, pano] : panoramas_) {
    if (!HasVertex(id))
      throw Error(ErrorCode::kInvariantViolation,
                  "panorama for unknown vertex " + id);
  }
}

bool SceneGraph::HasEdge(const VertexId &a, const VertexId &b) const {
  if (a == b) return false;
  return edges_.count(Edge(a, b)) > 0;
}

const Vec3 &SceneGraph::Position(const VertexId &id) const {
  auto it = vertices_.find(id);
  if (it == vertices_.end())
    throw Error(ErrorCode::kUnknownVertex, id + " in scene " + scene_id_);
  return it->second.position;
}

const Panorama &SceneGraph::PanoramaAt(const VertexId &id) const {
  auto it = panoramas_.find(id);
  if (it == panoramas_.end())
    throw Error(ErrorCode::kInvariantViolation,
                "no panorama for vertex " + id + " in scene " + scene_id_);
  return it->second;
}

const std::vector<VertexId> &SceneGraph::Neighbors(const VertexId &id) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end())
    throw Error(ErrorCode::kUnknownVertex, id + " in scene " + scene_id_);
  return it->second;
}

std::vector<Vertex> SceneGraph::VertexList() const {
  std::vector<Vertex> out;
  out.reserve(vertices_.size());
  for (const auto &[id, v] : vertices_) out.push_back(v);
  return out;
}

GraphIndex::GraphIndex(const SceneGraph &g) {
  ids.reserve(g.num_vertices());
  for (const auto &[id, v] : g.vertices()) {
    index.emplace(id, static_cast<int>(ids.size()));
    ids.push_back(id);
  }
  adj.resize(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (const VertexId &n : g.Neighbors(ids[i])) adj[i].push_back(index.at(n));
  }
}

int GraphIndex::IndexOf(const VertexId &id) const {
  auto it = index.find(id);
  if (it == index.end()) throw Error(ErrorCode::kUnknownVertex, id);
  return it->second;
}

Heading Heading::FromRadians(double radians) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return Heading(r);
}

double Heading::degrees() const { return radians_ * 180.0 / std::numbers::pi; }

Heading HeadingBetween(const Vec3 &from, const Vec3 &to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  if (dx == 0.0 && dy == 0.0)
    throw Error(ErrorCode::kDegenerateDirection,
                "positions coincide in the X-Y plane");
  return Heading::FromRadians(std::atan2(dx, dy));
}

double AngularDifference(Heading a, Heading b) {
  double d = std::fabs(a.radians() - b.radians());
  if (d > std::numbers::pi) d = 2.0 * std::numbers::pi - d;
  return d;
}

int SectorIndex(Heading h) {
  const double sector = std::numbers::pi / 6.0;
  const int i = static_cast<int>(std::floor(h.radians() / sector + 0.5));
  return ((i % Panorama::kHorizontal) + Panorama::kHorizontal) %
         Panorama::kHorizontal;
}

namespace {

// BFS from `start`, never traversing the edge (skip_a, skip_b).
std::vector<bool> Reachable(const GraphIndex &gi, int start, int skip_a = -1,
                            int skip_b = -1) {
  std::vector<bool> seen(gi.size(), false);
  std::queue<int> q;
  seen[start] = true;
  q.push(start);
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (int y : gi.adj[x]) {
      if ((x == skip_a && y == skip_b) || (x == skip_b && y == skip_a))
        continue;
      if (!seen[y]) {
        seen[y] = true;
        q.push(y);
      }
    }
  }
  return seen;
}

}  // namespace

bool IsConnected(const SceneGraph &g) {
  if (g.num_vertices() == 0) return true;
  GraphIndex gi(g);
  auto seen = Reachable(gi, 0);
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

void RequireConnected(const SceneGraph &g) {
  if (!IsConnected(g))
    throw Error(ErrorCode::kDisconnectedGraph,
                "scene " + g.scene_id() + " is not connected");
}

std::set<Edge> FindBridges(const SceneGraph &g) {
  GraphIndex gi(g);
  const int n = gi.size();
  std::vector<int> disc(n, -1), low(n, 0);
  std::set<Edge> bridges;
  int timer = 0;
  // Iterative DFS; frame = (vertex, parent, next neighbor position).
  struct Frame {
    int v;
    int parent;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame &f = stack.back();
      if (f.next < gi.adj[f.v].size()) {
        const int w = gi.adj[f.v][f.next++];
        if (w == f.parent) continue;  // simple graph: one parent edge
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, f.v, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        const int v = f.v;
        const int p = f.parent;
        stack.pop_back();
        if (p >= 0) {
          low[p] = std::min(low[p], low[v]);
          if (low[v] > disc[p]) bridges.insert(Edge(gi.ids[p], gi.ids[v]));
        }
      }
    }
  }
  return bridges;
}

bool IsBridge(const SceneGraph &g, const Edge &e) {
  if (!g.HasEdge(e))
    throw Error(ErrorCode::kUnknownEdge,
                e.ToString() + " in scene " + g.scene_id());
  return FindBridges(g).count(e) > 0;
}

std::set<VertexId> SideComponent(const SceneGraph &g, const Edge &e,
                                 const VertexId &anchor) {
  if (!g.HasEdge(e))
    throw Error(ErrorCode::kUnknownEdge,
                e.ToString() + " in scene " + g.scene_id());
  if (!e.Touches(anchor))
    throw Error(ErrorCode::kBadParams,
                "anchor " + anchor + " is not an endpoint of " + e.ToString());
  GraphIndex gi(g);
  const int a = gi.IndexOf(e.u);
  const int b = gi.IndexOf(e.v);
  auto seen = Reachable(gi, gi.IndexOf(anchor), a, b);
  if (seen[a] && seen[b])
    throw Error(ErrorCode::kNotABridge,
                e.ToString() + " in scene " + g.scene_id());
  std::set<VertexId> out;
  for (int i = 0; i < gi.size(); ++i)
    if (seen[i]) out.insert(gi.ids[i]);
  return out;
}

}  // namespace rem
