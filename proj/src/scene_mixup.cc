// src/scene_mixup.cc

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

#include "rem/scene_mixup.h"

#include <queue>
#include <set>

namespace rem {

std::string Namespaced(const std::string &scene_id, const VertexId &id) {
  return scene_id + "/" + id;
}

std::pair<std::string, VertexId> SplitNamespaced(const VertexId &id) {
  const auto slash = id.find('/');
  if (slash == std::string::npos) return {"", id};
  return {id.substr(0, slash), id.substr(slash + 1)};
}

std::array<KeyVertexRole, 4> CrossScene::KeyVertexRoles() const {
  const std::string &a = sources[0];
  const std::string &b = sources[1];
  const VertexId s1 = Namespaced(a, key1.v_s), t1 = Namespaced(a, key1.v_t);
  const VertexId s2 = Namespaced(b, key2.v_s), t2 = Namespaced(b, key2.v_t);
  return {{{s1, t2, s2}, {t1, s2, t2}, {s2, t1, s1}, {t2, s1, t1}}};
}

bool CrossScene::IsCrossEdge(const VertexId &x, const VertexId &y) const {
  for (const auto &[p, q] : cross_edges)
    if ((x == p && y == q) || (x == q && y == p)) return true;
  return false;
}

namespace {

void RequireValidKey(const SceneGraph &g, const KeyEdge &k) {
  const Edge e = k.edge();
  if (k.v_s == k.v_t || !g.HasEdge(e))
    throw Error(ErrorCode::kKeyEdgeInvalid,
                e.ToString() + " is not an edge of scene " + g.scene_id());
  if (!FindBridges(g).count(e))
    throw Error(ErrorCode::kKeyEdgeInvalid,
                e.ToString() + " is not a bridge of scene " + g.scene_id());
}

double KeyHeading(const SceneGraph &g, const VertexId &from,
                  const VertexId &to) {
  try {
    return HeadingBetween(g.Position(from), g.Position(to)).radians();
  } catch (const Error &) {
    throw Error(ErrorCode::kKeyEdgeInvalid,
                "key edge " + from + "-" + to + " of scene " + g.scene_id() +
                    " has no horizontal direction");
  }
}

// Vertices of scene `prefix` reachable from `start` without leaving that
// scene; the key edge is already gone, so this is the start's side.
std::set<VertexId> SideWithinSource(const SceneGraph &g,
                                    const std::string &prefix,
                                    const VertexId &start) {
  std::set<VertexId> seen{start};
  std::queue<VertexId> q;
  q.push(start);
  while (!q.empty()) {
    const VertexId x = q.front();
    q.pop();
    for (const VertexId &y : g.Neighbors(x)) {
      if (SplitNamespaced(y).first != prefix || seen.count(y)) continue;
      seen.insert(y);
      q.push(y);
    }
  }
  return seen;
}

}  // namespace

CrossScene CrossConnect(const SceneGraph &g1, const KeyEdge &k1,
                        const SceneGraph &g2, const KeyEdge &k2) {
  if (g1.scene_id() == g2.scene_id())
    throw Error(ErrorCode::kSceneIdCollision,
                "cannot mix scene " + g1.scene_id() + " with itself");
  RequireValidKey(g1, k1);
  RequireValidKey(g2, k2);

  CrossScene c;
  c.sources = {g1.scene_id(), g2.scene_id()};
  c.scene_id = g1.scene_id() + "+" + g2.scene_id();
  c.key1 = k1;
  c.key2 = k2;

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::map<VertexId, Panorama> panoramas;
  auto absorb = [&](const SceneGraph &g, const KeyEdge &k) {
    const std::string &sid = g.scene_id();
    for (const auto &[id, v] : g.vertices())
      vertices.push_back({Namespaced(sid, id), v.position});
    for (const Edge &e : g.edges())
      if (e != k.edge())
        edges.emplace_back(Namespaced(sid, e.u), Namespaced(sid, e.v));
    for (const auto &[id, pano] : g.panoramas())
      panoramas.emplace(Namespaced(sid, id), pano);
  };
  absorb(g1, k1);
  absorb(g2, k2);

  const std::string &a = c.sources[0];
  const std::string &b = c.sources[1];
  const VertexId s1 = Namespaced(a, k1.v_s), t1 = Namespaced(a, k1.v_t);
  const VertexId s2 = Namespaced(b, k2.v_s), t2 = Namespaced(b, k2.v_t);
  c.cross_edges = {{{s1, t2}, {s2, t1}}};
  c.removed_edges = {Edge(s1, t1), Edge(s2, t2)};
  edges.emplace_back(s1, t2);
  edges.emplace_back(s2, t1);

  c.key_headings[s1] = KeyHeading(g1, k1.v_s, k1.v_t);
  c.key_headings[t1] = KeyHeading(g1, k1.v_t, k1.v_s);
  c.key_headings[s2] = KeyHeading(g2, k2.v_s, k2.v_t);
  c.key_headings[t2] = KeyHeading(g2, k2.v_t, k2.v_s);

  c.graph = SceneGraph(c.scene_id, vertices, edges, std::move(panoramas));
  return c;
}

CrossScene AlignOrientation(const CrossScene &c) {
  if (c.alignment.applied)
    throw Error(ErrorCode::kAlreadyAligned, c.scene_id);
  const VertexId t1 = Namespaced(c.sources[0], c.key1.v_t);
  const VertexId t2 = Namespaced(c.sources[1], c.key2.v_t);
  const Vec3 p1 = c.graph.Position(t1);
  const Vec3 p2 = c.graph.Position(t2);

  CrossScene out = c;
  out.alignment.translation_b1 = p2 - p1;
  out.alignment.translation_b2 = p1 - p2;
  out.alignment.applied = true;

  const std::set<VertexId> side1 = SideWithinSource(c.graph, c.sources[0], t1);
  const std::set<VertexId> side2 = SideWithinSource(c.graph, c.sources[1], t2);
  std::vector<Vertex> vertices = c.graph.VertexList();
  for (Vertex &v : vertices) {
    if (side1.count(v.id))
      v.position = v.position + out.alignment.translation_b1;
    else if (side2.count(v.id))
      v.position = v.position + out.alignment.translation_b2;
  }
  out.graph = SceneGraph(c.graph.scene_id(), vertices, c.graph.EdgeList(),
                         c.graph.panoramas());
  return out;
}

std::vector<int> ReplacedSectorOffsets(int k_replace) {
  std::vector<int> offsets;
  if (k_replace <= 0) return offsets;
  for (int o = -((k_replace - 1) / 2); o <= k_replace / 2; ++o)
    offsets.push_back(o);
  return offsets;
}

CrossScene MixPanoramas(const CrossScene &c, int k_replace,
                        bool allow_unaligned) {
  if (k_replace < 0 || k_replace > Panorama::kHorizontal)
    throw Error(ErrorCode::kKReplaceOutOfRange,
                std::to_string(k_replace) + " not in 0..12");
  if (!c.alignment.applied && !allow_unaligned)
    throw Error(ErrorCode::kNotAligned,
                c.scene_id + ": mix panoramas after orientation alignment");
  if (c.k_replace)
    throw Error(ErrorCode::kBadParams, c.scene_id + ": panoramas already mixed");

  // Donors read the unmixed panoramas held by c.graph.
  std::map<VertexId, Panorama> mixed = c.graph.panoramas();
  const std::vector<int> offsets = ReplacedSectorOffsets(k_replace);
  for (const KeyVertexRole &role : c.KeyVertexRoles()) {
    const Panorama &donor = c.graph.PanoramaAt(role.donor);
    c.graph.PanoramaAt(role.host);  // throws if the host has none
    Panorama &host = mixed.at(role.host);
    if (donor.feature_dim() != host.feature_dim())
      throw Error(ErrorCode::kFeatureDimMismatch,
                  role.host + " and " + role.donor + " panoramas differ");
    const int host_center = SectorIndex(HeadingBetween(
        c.graph.Position(role.host), c.graph.Position(role.neighbor)));
    const int donor_center =
        SectorIndex(Heading::FromRadians(c.key_headings.at(role.donor)));
    for (int o : offsets) {
      const int hs = (host_center + o + Panorama::kHorizontal) % Panorama::kHorizontal;
      const int ds = (donor_center + o + Panorama::kHorizontal) % Panorama::kHorizontal;
      for (int v = 0; v < Panorama::kVertical; ++v)
        host.at(hs, v) = donor.at(ds, v);
    }
  }

  CrossScene out = c;
  out.graph = SceneGraph(c.graph.scene_id(), c.graph.VertexList(),
                         c.graph.EdgeList(), std::move(mixed));
  out.k_replace = k_replace;
  return out;
}

std::vector<std::string> StructuralViolations(const CrossScene &c,
                                              const SceneGraph &g1,
                                              const SceneGraph &g2) {
  std::vector<std::string> out;
  const SceneGraph &g = c.graph;
  if (g.num_vertices() != g1.num_vertices() + g2.num_vertices())
    out.push_back("vertex count " + std::to_string(g.num_vertices()) +
                  " != " + std::to_string(g1.num_vertices()) + " + " +
                  std::to_string(g2.num_vertices()));
  if (g.num_edges() != g1.num_edges() + g2.num_edges())
    out.push_back("edge count " + std::to_string(g.num_edges()) + " != " +
                  std::to_string(g1.num_edges()) + " + " +
                  std::to_string(g2.num_edges()));
  // Cutting two bridges and adding two edges leaves exactly two halves, each
  // joined through one cross edge: A_s + B_t and B_s + A_t.
  const GraphIndex gi(g);
  std::vector<int> comp(gi.size(), -1);
  int n_comp = 0;
  for (int s = 0; s < gi.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = n_comp;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int y : gi.adj[x])
        if (comp[y] < 0) {
          comp[y] = n_comp;
          stack.push_back(y);
        }
    }
    ++n_comp;
  }
  if (n_comp != 2) {
    out.push_back("cross scene has " + std::to_string(n_comp) + " components, expected 2");
  } else if (g.HasVertex(c.cross_edges[0].first) && g.HasVertex(c.cross_edges[1].first) &&
             comp[gi.IndexOf(c.cross_edges[0].first)] == comp[gi.IndexOf(c.cross_edges[1].first)]) {
    out.push_back("both cross edges lie in one component");
  }
  for (const Edge &e : c.removed_edges)
    if (g.HasEdge(e)) out.push_back("removed key edge " + e.ToString() + " present");
  for (const auto &[p, q] : c.cross_edges)
    if (!g.HasEdge(p, q)) out.push_back("cross edge " + p + "-" + q + " missing");
  return out;
}

Json KeyEdgeToJson(const KeyEdge &k) {
  return {{"v_s", k.v_s},           {"v_t", k.v_t},
          {"path_count", k.path_count}, {"vc_rank_s", k.vc_rank_s},
          {"vc_rank_t", k.vc_rank_t}, {"ec_rank", k.ec_rank},
          {"effective_k", k.effective_k}};
}

KeyEdge KeyEdgeFromJson(const Json &j) {
  KeyEdge k;
  k.v_s = j.at("v_s").get<std::string>();
  k.v_t = j.at("v_t").get<std::string>();
  k.path_count = j.at("path_count").get<int>();
  k.vc_rank_s = j.at("vc_rank_s").get<int>();
  k.vc_rank_t = j.at("vc_rank_t").get<int>();
  k.ec_rank = j.at("ec_rank").get<int>();
  k.effective_k = j.at("effective_k").get<int>();
  return k;
}

Json CrossSceneSidecar(const CrossScene &c, std::uint64_t seed) {
  Json headings = Json::object();
  for (const auto &[id, rad] : c.key_headings) headings[id] = rad;
  return {
      {"scene_id", c.scene_id},
      {"sources", c.sources},
      {"key_edges", {KeyEdgeToJson(c.key1), KeyEdgeToJson(c.key2)}},
      {"cross_edges",
       Json::array({Json::array({c.cross_edges[0].first, c.cross_edges[0].second}),
                    Json::array({c.cross_edges[1].first, c.cross_edges[1].second})})},
      {"removed_edges",
       Json::array({Json::array({c.removed_edges[0].u, c.removed_edges[0].v}),
                    Json::array({c.removed_edges[1].u, c.removed_edges[1].v})})},
      {"alignment",
       {{"applied", c.alignment.applied},
        {"translation_b1", Vec3ToJson(c.alignment.translation_b1)},
        {"translation_b2", Vec3ToJson(c.alignment.translation_b2)}}},
      {"key_headings", std::move(headings)},
      {"k_replace", c.k_replace ? Json(*c.k_replace) : Json(nullptr)},
      {"view_mix", c.k_replace.has_value()},
      {"seed", seed},
  };
}

CrossScene CrossSceneFromJson(const Json &scene, const Json &sidecar) {
  try {
    CrossScene c;
    c.graph = SceneFromJson(scene, false);
    c.scene_id = sidecar.at("scene_id").get<std::string>();
    if (c.scene_id != c.graph.scene_id())
      throw Error(ErrorCode::kInvariantViolation,
                  "sidecar " + c.scene_id + " does not match scene " +
                      c.graph.scene_id());
    c.sources = sidecar.at("sources").get<std::array<std::string, 2>>();
    c.key1 = KeyEdgeFromJson(sidecar.at("key_edges").at(0));
    c.key2 = KeyEdgeFromJson(sidecar.at("key_edges").at(1));
    for (int i = 0; i < 2; ++i) {
      const Json &ce = sidecar.at("cross_edges").at(i);
      c.cross_edges[i] = {ce.at(0).get<std::string>(), ce.at(1).get<std::string>()};
      const Json &re = sidecar.at("removed_edges").at(i);
      c.removed_edges[i] = Edge(re.at(0).get<std::string>(),
                                re.at(1).get<std::string>());
    }
    const Json &al = sidecar.at("alignment");
    c.alignment.applied = al.at("applied").get<bool>();
    c.alignment.translation_b1 = Vec3FromJson(al.at("translation_b1"), "translation_b1");
    c.alignment.translation_b2 = Vec3FromJson(al.at("translation_b2"), "translation_b2");
    for (const auto &[id, rad] : sidecar.at("key_headings").items())
      c.key_headings[id] = rad.get<double>();
    if (!sidecar.at("k_replace").is_null())
      c.k_replace = sidecar.at("k_replace").get<int>();
    return c;
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::kParseError, std::string("cross scene sidecar: ") + e.what());
  }
}

}  // namespace rem
