// include/rem/nav_graph.h

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

#ifndef REM_NAV_GRAPH_H_
#define REM_NAV_GRAPH_H_

#include <array>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "rem/error.h"

namespace rem {

using VertexId = std::string;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(const Vec3 &a, const Vec3 &b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3 &a, const Vec3 &b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend bool operator==(const Vec3 &, const Vec3 &) = default;
};

double Distance(const Vec3 &a, const Vec3 &b);

struct Vertex {
  VertexId id;
  Vec3 position;
  friend bool operator==(const Vertex &, const Vertex &) = default;
};

// Undirected edge stored with u < v.
struct Edge {
  VertexId u;
  VertexId v;

  Edge() = default;
  Edge(VertexId a, VertexId b);

  bool Touches(const VertexId &id) const { return u == id || v == id; }
  // The endpoint that is not `id`; `id` must be an endpoint.
  const VertexId &Other(const VertexId &id) const { return id == u ? v : u; }
  std::string ToString() const { return u + "-" + v; }

  friend auto operator<=>(const Edge &, const Edge &) = default;
  friend bool operator==(const Edge &, const Edge &) = default;
};

struct Provenance {
  std::string scene_id;
  VertexId viewpoint_id;
  int h = 0;
  int v = 0;
  friend bool operator==(const Provenance &, const Provenance &) = default;
};

struct ViewCell {
  std::vector<double> feature;
  Provenance provenance;
  friend bool operator==(const ViewCell &, const ViewCell &) = default;
};

// 12 horizontal sectors by 3 vertical tiers of view cells.
class Panorama {
 public:
  static constexpr int kHorizontal = 12;
  static constexpr int kVertical = 3;
  static constexpr int kCells = kHorizontal * kVertical;

  Panorama() = default;
  // Throws InvariantViolation when cells disagree on feature length or
  // carry out-of-range provenance indices.
  Panorama(int feature_dim, std::array<ViewCell, kCells> cells);

  // Every cell zero-filled, provenance pointing at (scene, viewpoint).
  static Panorama Placeholder(const std::string &scene_id,
                              const VertexId &viewpoint, int feature_dim);

  int feature_dim() const { return feature_dim_; }
  const ViewCell &at(int h, int v) const { return cells_[Index(h, v)]; }
  ViewCell &at(int h, int v) { return cells_[Index(h, v)]; }
  // Row-major (v, h) order.
  const std::array<ViewCell, kCells> &cells() const { return cells_; }

  static int Index(int h, int v) { return v * kHorizontal + h; }

  friend bool operator==(const Panorama &, const Panorama &) = default;

 private:
  int feature_dim_ = 0;
  std::array<ViewCell, kCells> cells_;
};

// A navigation scene. Structural invariants (edge endpoints exist, no
// self-loops, no duplicates, panoramas keyed by known vertices) are checked
// on construction. Connectivity is checked by the loaders and by the
// operations that require it.
class SceneGraph {
 public:
  SceneGraph() = default;
  SceneGraph(std::string scene_id, const std::vector<Vertex> &vertices,
             const std::vector<Edge> &edges,
             std::map<VertexId, Panorama> panoramas = {});

  const std::string &scene_id() const { return scene_id_; }
  const std::map<VertexId, Vertex> &vertices() const { return vertices_; }
  const std::set<Edge> &edges() const { return edges_; }
  const std::map<VertexId, Panorama> &panoramas() const { return panoramas_; }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  bool HasVertex(const VertexId &id) const { return vertices_.count(id) > 0; }
  bool HasEdge(const Edge &e) const { return edges_.count(e) > 0; }
  bool HasEdge(const VertexId &a, const VertexId &b) const;
  const Vec3 &Position(const VertexId &id) const;
  const Panorama &PanoramaAt(const VertexId &id) const;
  // Sorted neighbor ids.
  const std::vector<VertexId> &Neighbors(const VertexId &id) const;

  std::vector<Vertex> VertexList() const;
  std::vector<Edge> EdgeList() const {
    return {edges_.begin(), edges_.end()};
  }

  friend bool operator==(const SceneGraph &a, const SceneGraph &b) {
    return a.scene_id_ == b.scene_id_ && a.vertices_ == b.vertices_ &&
           a.edges_ == b.edges_ && a.panoramas_ == b.panoramas_;
  }

 private:
  std::string scene_id_;
  std::map<VertexId, Vertex> vertices_;
  std::set<Edge> edges_;
  std::map<VertexId, Panorama> panoramas_;
  std::map<VertexId, std::vector<VertexId>> adjacency_;
};

// Dense integer view of a SceneGraph: vertex i is the i-th id in sorted
// order and adjacency lists are sorted.
struct GraphIndex {
  std::vector<VertexId> ids;
  std::unordered_map<VertexId, int> index;
  std::vector<std::vector<int>> adj;

  explicit GraphIndex(const SceneGraph &g);
  int size() const { return static_cast<int>(ids.size()); }
  int IndexOf(const VertexId &id) const;
};

// Direction in the X-Y plane, clockwise from +Y, in [0, 2*pi).
class Heading {
 public:
  static Heading FromRadians(double radians);
  double radians() const { return radians_; }
  double degrees() const;

 private:
  explicit Heading(double r) : radians_(r) {}
  double radians_ = 0.0;
};

// atan2(dx, dy) normalized to [0, 2*pi). Z is ignored. Throws
// DegenerateDirection when the X-Y projection of (to - from) is zero.
Heading HeadingBetween(const Vec3 &from, const Vec3 &to);

// Unsigned angle between two headings, in [0, pi].
double AngularDifference(Heading a, Heading b);

// Sector i covers [30i - 15deg, 30i + 15deg); boundary ties go up.
int SectorIndex(Heading h);

bool IsConnected(const SceneGraph &g);
void RequireConnected(const SceneGraph &g);

// All bridges, by low-link DFS.
std::set<Edge> FindBridges(const SceneGraph &g);
bool IsBridge(const SceneGraph &g, const Edge &e);

// Vertices reachable from `anchor` once bridge `e` is removed.
std::set<VertexId> SideComponent(const SceneGraph &g, const Edge &e,
                                 const VertexId &anchor);

}  // namespace rem

#endif  // REM_NAV_GRAPH_H_
