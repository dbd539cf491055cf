// src/json_io.cc

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

#include "rem/json_io.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rem {

double RoundSig9(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return std::strtod(buf, nullptr);
}

Json Vec3ToJson(const Vec3 &v) {
  return Json::array({RoundSig9(v.x), RoundSig9(v.y), RoundSig9(v.z)});
}

Vec3 Vec3FromJson(const Json &j, const std::string &what) {
  if (!j.is_array() || j.size() != 3)
    throw Error(ErrorCode::kParseError, what + ": expected [x, y, z]");
  for (const Json &c : j)
    if (!c.is_number())
      throw Error(ErrorCode::kParseError, what + ": non-numeric coordinate");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::string DumpCanonical(const Json &j) { return j.dump() + "\n"; }

std::string ReadTextFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json ReadJsonFile(const std::filesystem::path &path) {
  const std::string text = ReadTextFile(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

void WriteTextFile(const std::filesystem::path &path, const std::string &text) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

void WriteJsonFile(const std::filesystem::path &path, const Json &j) {
  WriteTextFile(path, DumpCanonical(j));
}

std::string Fnv1aHex(const std::string &bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json SceneToJson(const SceneGraph &g) {
  Json vertices = Json::array();
  for (const auto &[id, v] : g.vertices())
    vertices.push_back({{"id", id}, {"position", Vec3ToJson(v.position)}});
  Json edges = Json::array();
  for (const Edge &e : g.edges()) edges.push_back({e.u, e.v});
  Json panoramas = Json::object();
  for (const auto &[id, pano] : g.panoramas()) {
    Json cells = Json::array();
    for (const ViewCell &c : pano.cells()) {
      Json feature = Json::array();
      for (double f : c.feature) feature.push_back(RoundSig9(f));
      cells.push_back({{"feature", std::move(feature)},
                       {"provenance",
                        {{"scene_id", c.provenance.scene_id},
                         {"viewpoint_id", c.provenance.viewpoint_id},
                         {"h", c.provenance.h},
                         {"v", c.provenance.v}}}});
    }
    panoramas[id] = {{"feature_dim", pano.feature_dim()},
                     {"cells", std::move(cells)}};
  }
  return {{"scene_id", g.scene_id()},
          {"vertices", std::move(vertices)},
          {"edges", std::move(edges)},
          {"panoramas", std::move(panoramas)}};
}

namespace {

Panorama PanoramaFromJson(const Json &j, const std::string &where) {
  if (!j.is_object() || !j.contains("feature_dim") || !j.contains("cells"))
    throw Error(ErrorCode::kParseError,
                where + ": panorama needs feature_dim and cells");
  const int dim = j.at("feature_dim").get<int>();
  const Json &cells = j.at("cells");
  if (!cells.is_array() || cells.size() != Panorama::kCells)
    throw Error(ErrorCode::kInvariantViolation,
                where + ": panorama must have exactly 36 cells");
  std::array<ViewCell, Panorama::kCells> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Json &c = cells[i];
    out[i].feature = c.at("feature").get<std::vector<double>>();
    const Json &p = c.at("provenance");
    out[i].provenance = {p.at("scene_id").get<std::string>(),
                         p.at("viewpoint_id").get<std::string>(),
                         p.at("h").get<int>(), p.at("v").get<int>()};
  }
  try {
    return Panorama(dim, std::move(out));
  } catch (const Error &e) {
    throw Error(e.code(), where + ": " + e.detail());
  }
}

}  // namespace

SceneGraph SceneFromJson(const Json &j, bool require_connected) {
  try {
    const std::string scene_id = j.at("scene_id").get<std::string>();
    std::vector<Vertex> vertices;
    for (const Json &v : j.at("vertices")) {
      const std::string id = v.at("id").get<std::string>();
      vertices.push_back(
          {id, Vec3FromJson(v.at("position"), "vertex " + id + " position")});
    }
    std::vector<Edge> edges;
    for (const Json &e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw Error(ErrorCode::kParseError,
                    "scene " + scene_id + ": edge must be a 2-element array");
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    std::map<VertexId, Panorama> panoramas;
    if (j.contains("panoramas")) {
      for (const auto &[id, pj] : j.at("panoramas").items())
        panoramas.emplace(id, PanoramaFromJson(pj, "scene " + scene_id +
                                                       " panorama " + id));
    }
    SceneGraph g(scene_id, vertices, edges, std::move(panoramas));
    for (const auto &[id, v] : g.vertices())
      if (!g.panoramas().count(id))
        throw Error(ErrorCode::kInvariantViolation,
                    "scene " + scene_id + ": vertex " + id + " has no panorama");
    if (require_connected) RequireConnected(g);
    return g;
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::kParseError, std::string("scene document: ") + e.what());
  }
}

void SaveScene(const SceneGraph &g, const std::filesystem::path &path) {
  WriteJsonFile(path, SceneToJson(g));
}

SceneGraph LoadScene(const std::filesystem::path &path, bool require_connected) {
  try {
    return SceneFromJson(ReadJsonFile(path), require_connected);
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

}  // namespace rem
