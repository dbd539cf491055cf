// src/dataset_io.cc

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

#include "rem/dataset_io.h"

#include <algorithm>
#include <set>

namespace rem {

namespace fs = std::filesystem;

const PathRecord *DatasetBundle::FindPath(const std::string &path_id) const {
  auto it = std::lower_bound(
      paths.begin(), paths.end(), path_id,
      [](const PathRecord &p, const std::string &id) { return p.path_id < id; });
  if (it == paths.end() || it->path_id != path_id) return nullptr;
  return &*it;
}

std::vector<PathRecord> DatasetBundle::PathsOfScene(const std::string &scene_id) const {
  std::vector<PathRecord> out;
  for (const PathRecord &p : paths)
    if (p.scene_id == scene_id) out.push_back(p);
  return out;
}

void ValidateBundle(const DatasetBundle &bundle, bool require_chunks) {
  auto fail = [](const std::string &record, const std::string &rule) {
    throw Error(ErrorCode::kInvariantViolation, record + ": " + rule);
  };
  std::set<std::string> path_ids;
  for (const PathRecord &p : bundle.paths) {
    const std::string rec = "path " + p.path_id;
    if (!path_ids.insert(p.path_id).second) fail(rec, "duplicate path_id");
    auto sc = bundle.scenes.find(p.scene_id);
    if (sc == bundle.scenes.end()) fail(rec, "unknown scene " + p.scene_id);
    if (p.vertices.size() < 2) fail(rec, "needs at least 2 viewpoints");
    try {
      ValidatePathSteps(p.vertices, sc->second, rec);
    } catch (const Error &e) {
      fail(rec, e.detail());
    }
  }
  std::set<std::string> instruction_ids;
  for (const InstructionRecord &ins : bundle.instructions) {
    const std::string rec = "instruction " + ins.instruction_id();
    const PathRecord *p = bundle.FindPath(ins.path_id);
    if (!p) fail(rec, "unknown path " + ins.path_id);
    if (!instruction_ids.insert(ins.instruction_id()).second)
      fail(rec, "duplicate instruction");
    if (ins.tokens.empty()) fail(rec, "no tokens");
    if (require_chunks || !ins.chunks.empty()) {
      try {
        ValidateChunks(ins, p->vertices.size());
      } catch (const Error &e) {
        fail(rec, e.detail());
      }
    }
  }
}

Json DatasetToJson(const DatasetBundle &bundle) {
  std::map<std::string, std::vector<const InstructionRecord *>> by_path;
  for (const InstructionRecord &ins : bundle.instructions)
    by_path[ins.path_id].push_back(&ins);
  Json items = Json::array();
  for (const PathRecord &p : bundle.paths) {
    Json instr = Json::array();
    for (const InstructionRecord *ins : by_path[p.path_id]) instr.push_back(ins->tokens);
    items.push_back({{"path_id", p.path_id},
                     {"scan", p.scene_id},
                     {"path", p.vertices},
                     {"instructions", std::move(instr)}});
  }
  return items;
}

Json ChunksToJson(const DatasetBundle &bundle) {
  Json out = Json::object();
  for (const InstructionRecord &ins : bundle.instructions) {
    Json chunks = Json::array();
    for (const Chunk &c : ins.chunks)
      chunks.push_back({{"token_span", {c.token_span.begin, c.token_span.end}},
                        {"path_span", {c.path_span.first, c.path_span.last}}});
    out[ins.path_id].push_back(std::move(chunks));
  }
  return out;
}

std::map<std::string, SceneGraph> LoadSceneDir(const fs::path &dir, bool require_connected) {
  if (!fs::is_directory(dir))
    throw Error(ErrorCode::kIo, dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    if (name.size() >= 14 && name.ends_with(".manifest.json")) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::map<std::string, SceneGraph> scenes;
  for (const fs::path &f : files) {
    SceneGraph g = LoadScene(f, require_connected);
    const std::string id = g.scene_id();
    if (!scenes.emplace(id, std::move(g)).second)
      throw Error(ErrorCode::kInvariantViolation,
                  "scene " + id + ": duplicate scene_id in " + f.string());
  }
  return scenes;
}

namespace {

std::pair<int, int> IntPair(const Json &j, const std::string &what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer())
    throw Error(ErrorCode::kParseError, what + ": expected [int, int]");
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

DatasetBundle LoadBundle(const fs::path &scene_dir, const fs::path &dataset_file,
                         const fs::path &chunk_file, bool require_connected) {
  DatasetBundle b;
  b.scenes = LoadSceneDir(scene_dir, require_connected);
  const Json items = ReadJsonFile(dataset_file);
  try {
    if (!items.is_array())
      throw Error(ErrorCode::kParseError, dataset_file.string() + ": expected an array");
    for (const Json &item : items) {
      PathRecord p;
      p.path_id = item.at("path_id").get<std::string>();
      p.scene_id = item.at("scan").get<std::string>();
      p.vertices = item.at("path").get<std::vector<std::string>>();
      int variant = 0;
      for (const Json &tokens : item.at("instructions")) {
        InstructionRecord ins;
        ins.path_id = p.path_id;
        ins.variant = variant++;
        ins.tokens = tokens.get<std::vector<std::string>>();
        b.instructions.push_back(std::move(ins));
      }
      b.paths.push_back(std::move(p));
    }
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::kParseError, dataset_file.string() + ": " + e.what());
  }

  const bool with_chunks = !chunk_file.empty();
  if (with_chunks) {
    const Json chunks = ReadJsonFile(chunk_file);
    try {
      for (InstructionRecord &ins : b.instructions) {
        if (!chunks.contains(ins.path_id)) continue;
        const Json &per_path = chunks.at(ins.path_id);
        if (static_cast<int>(per_path.size()) <= ins.variant) continue;
        const std::string what = "chunks of " + ins.instruction_id();
        for (const Json &c : per_path.at(ins.variant)) {
          auto [tb, te] = IntPair(c.at("token_span"), what);
          auto [pf, pl] = IntPair(c.at("path_span"), what);
          ins.chunks.push_back({{tb, te}, {pf, pl}});
        }
      }
    } catch (const Json::exception &e) {
      throw Error(ErrorCode::kParseError, chunk_file.string() + ": " + e.what());
    }
  }

  std::sort(b.paths.begin(), b.paths.end(),
            [](const auto &x, const auto &y) { return x.path_id < y.path_id; });
  std::stable_sort(b.instructions.begin(), b.instructions.end(),
                   [](const auto &x, const auto &y) {
                     return x.path_id != y.path_id ? x.path_id < y.path_id
                                                   : x.variant < y.variant;
                   });
  ValidateBundle(b, with_chunks);
  return b;
}

void SaveBundle(const DatasetBundle &bundle, const fs::path &dir) {
  for (const auto &[id, g] : bundle.scenes) SaveScene(g, dir / "scenes" / (id + ".json"));
  WriteJsonFile(dir / "dataset.json", DatasetToJson(bundle));
  WriteJsonFile(dir / "chunks.json", ChunksToJson(bundle));
}

ImportResult ImportMatterportConnectivity(const Json &records,
                                          const std::string &scene_id,
                                          int feature_dim) {
  if (feature_dim <= 0) throw Error(ErrorCode::kBadParams, "feature_dim must be positive");
  ImportResult out;
  try {
    if (!records.is_array())
      throw Error(ErrorCode::kParseError, scene_id + ": connectivity must be an array");
    const std::size_t n = records.size();
    std::vector<std::string> ids(n);
    std::vector<bool> included(n);
    std::vector<std::vector<bool>> open(n);
    std::vector<Vertex> vertices;
    for (std::size_t i = 0; i < n; ++i) {
      const Json &r = records[i];
      ids[i] = r.at("image_id").get<std::string>();
      included[i] = r.at("included").get<bool>();
      const Json &pose = r.at("pose");
      if (!pose.is_array() || pose.size() != 16)
        throw Error(ErrorCode::kParseError,
                    scene_id + ": viewpoint " + ids[i] + " pose must have 16 entries");
      for (const Json &flag : r.at("unobstructed")) open[i].push_back(flag.get<bool>());
      if (open[i].size() != n)
        throw Error(ErrorCode::kParseError, scene_id + ": viewpoint " + ids[i] +
                                                " unobstructed list has wrong length");
      if (included[i])
        vertices.push_back({ids[i], {pose[3].get<double>(), pose[7].get<double>(),
                                     pose[11].get<double>()}});
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!included[i] || !included[j]) continue;
        if (open[i][j] && open[j][i]) {
          edges.emplace_back(ids[i], ids[j]);
        } else if (open[i][j] != open[j][i]) {
          out.warnings.push_back("AsymmetricAdjacency: " + scene_id + " " + ids[i] +
                                 "-" + ids[j] + " dropped");
        }
      }
    }
    std::map<VertexId, Panorama> panoramas;
    for (const Vertex &v : vertices)
      panoramas.emplace(v.id, Panorama::Placeholder(scene_id, v.id, feature_dim));
    out.scene = SceneGraph(scene_id, vertices, edges, std::move(panoramas));
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::kParseError, scene_id + ": " + e.what());
  }
  RequireConnected(out.scene);
  return out;
}

ImportResult ImportMatterportConnectivityFile(const fs::path &file, int feature_dim) {
  std::string scene_id = file.stem().string();
  const std::string suffix = "_connectivity";
  if (scene_id.ends_with(suffix)) scene_id.resize(scene_id.size() - suffix.size());
  return ImportMatterportConnectivity(ReadJsonFile(file), scene_id, feature_dim);
}

}  // namespace rem
