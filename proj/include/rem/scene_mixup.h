// include/rem/scene_mixup.h

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

#ifndef REM_SCENE_MIXUP_H_
#define REM_SCENE_MIXUP_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rem/json_io.h"
#include "rem/key_select.h"
#include "rem/nav_graph.h"

namespace rem {

constexpr int kDefaultReplaceViews = 3;

// "A" + "v17" -> "A/v17".
std::string Namespaced(const std::string &scene_id, const VertexId &id);
// Splits "A/v17" into ("A", "v17"); the scene part is everything before the
// first '/'.
std::pair<std::string, VertexId> SplitNamespaced(const VertexId &id);

struct AlignmentRecord {
  Vec3 translation_b1;  // applied to the v_t1 side of scene 1
  Vec3 translation_b2;  // applied to the v_t2 side of scene 2
  bool applied = false;
  friend bool operator==(const AlignmentRecord &,
                         const AlignmentRecord &) = default;
};

// One of the four key vertexes of a cross scene, with the cross-edge
// neighbor it now faces and the other scene's vertex that donates views.
struct KeyVertexRole {
  VertexId host;
  VertexId neighbor;
  VertexId donor;
};

struct CrossScene {
  std::string scene_id;                  // "A+B"
  std::array<std::string, 2> sources;    // {A, B}
  SceneGraph graph;                      // namespaced ids
  KeyEdge key1;                          // key edge of A (original ids)
  KeyEdge key2;                          // key edge of B (original ids)
  // (A/v_s1, B/v_t2) and (B/v_s2, A/v_t1), in that order.
  std::array<std::pair<VertexId, VertexId>, 2> cross_edges;
  std::array<Edge, 2> removed_edges;     // namespaced original key edges
  AlignmentRecord alignment;
  // Heading, in radians, from each namespaced key vertex toward its key-edge
  // partner in the source scene, before any surgery.
  std::map<VertexId, double> key_headings;
  // Set once panoramas have been mixed.
  std::optional<int> k_replace;

  std::array<KeyVertexRole, 4> KeyVertexRoles() const;
  bool IsCrossEdge(const VertexId &a, const VertexId &b) const;

  friend bool operator==(const CrossScene &, const CrossScene &) = default;
};

// Merges two scenes under namespaced ids, removes both key edges and links
// (v_s1, v_t2) and (v_s2, v_t1). Panoramas are copied unchanged.
// Throws SceneIdCollision or KeyEdgeInvalid.
CrossScene CrossConnect(const SceneGraph &g1, const KeyEdge &k1,
                        const SceneGraph &g2, const KeyEdge &k2);

// Swaps the positions of v_t1 and v_t2 by rigidly translating each one's
// side of its (removed) key edge, so both cross edges keep the geometry of
// the key edges they replace. Throws AlreadyAligned.
CrossScene AlignOrientation(const CrossScene &c);

// Sector offsets replaced around a center: k odd is symmetric, k even
// leans clockwise (k=2 -> {0, +1}, k=4 -> {-1, 0, +1, +2}).
std::vector<int> ReplacedSectorOffsets(int k_replace);

// At each key vertex, replaces the k_replace sectors (all three tiers)
// facing its cross-edge neighbor with the donor's cells around the donor's
// original key-edge heading. Requires alignment unless allow_unaligned.
// Throws KReplaceOutOfRange, NotAligned, FeatureDimMismatch.
CrossScene MixPanoramas(const CrossScene &c,
                        int k_replace = kDefaultReplaceViews,
                        bool allow_unaligned = false);

// Count and connectivity checks against the two source scenes; empty when
// the cross scene is well formed.
std::vector<std::string> StructuralViolations(const CrossScene &c,
                                              const SceneGraph &g1,
                                              const SceneGraph &g2);

// Sidecar manifest holding everything except the graph itself.
Json CrossSceneSidecar(const CrossScene &c, std::uint64_t seed);
CrossScene CrossSceneFromJson(const Json &scene, const Json &sidecar);

Json KeyEdgeToJson(const KeyEdge &k);
KeyEdge KeyEdgeFromJson(const Json &j);

}  // namespace rem

#endif  // REM_SCENE_MIXUP_H_
