// include/rem/dataset_io.h

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

#ifndef REM_DATASET_IO_H_
#define REM_DATASET_IO_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rem/json_io.h"
#include "rem/records.h"

namespace rem {

struct DatasetBundle {
  std::map<std::string, SceneGraph> scenes;
  std::vector<PathRecord> paths;                 // sorted by path_id
  std::vector<InstructionRecord> instructions;   // sorted by (path_id, variant)

  const PathRecord *FindPath(const std::string &path_id) const;
  std::vector<PathRecord> PathsOfScene(const std::string &scene_id) const;
};

// Throws InvariantViolation naming the first offending record and the rule
// it breaks. `require_chunks` demands chunk alignment on every instruction.
void ValidateBundle(const DatasetBundle &bundle, bool require_chunks);

// Dataset file: [{path_id, scan, path, instructions: [[token, ...], ...]}].
Json DatasetToJson(const DatasetBundle &bundle);
// Chunk file: {path_id: [[{token_span, path_span}, ...] per instruction]}.
Json ChunksToJson(const DatasetBundle &bundle);

// Reads every "*.json" scene in `dir` except "*.manifest.json" sidecars.
// Cross scenes are split in two, so readers of augmented trees pass false.
std::map<std::string, SceneGraph> LoadSceneDir(const std::filesystem::path &dir,
                                               bool require_connected = true);

// Loads and validates. An empty `chunk_file` skips chunk alignment.
// Throws ParseError, InvariantViolation, Io.
DatasetBundle LoadBundle(const std::filesystem::path &scene_dir,
                         const std::filesystem::path &dataset_file,
                         const std::filesystem::path &chunk_file,
                         bool require_connected = true);

// Writes dir/scenes/<scene>.json, dir/dataset.json, dir/chunks.json.
void SaveBundle(const DatasetBundle &bundle, const std::filesystem::path &dir);

struct ImportResult {
  SceneGraph scene;
  std::vector<std::string> warnings;
};

constexpr int kDefaultFeatureDim = 8;

// Matterport-style connectivity: an array of viewpoint records with
// image_id, a row-major 4x4 pose, an included flag, and an unobstructed
// list. Edges need both directions unobstructed; one-sided flags are
// dropped with a warning. Panoramas are zero placeholders.
ImportResult ImportMatterportConnectivity(const Json &records,
                                          const std::string &scene_id,
                                          int feature_dim = kDefaultFeatureDim);
ImportResult ImportMatterportConnectivityFile(const std::filesystem::path &file,
                                              int feature_dim = kDefaultFeatureDim);

struct SynthParams {
  std::uint64_t seed = 1;
  int n_scenes = 10;
  int rooms_per_scene = 4;
  int room_size = 5;
  int paths_per_scene = 24;
  int max_instructions = 3;
  int feature_dim = kDefaultFeatureDim;
};

// Room clusters joined by single corridor edges, shortest-path walks that
// mostly cross rooms, and templated step instructions chunked per segment.
// Positions lie on a 1/64 m grid. Throws BadParams.
DatasetBundle SynthGenerate(const SynthParams &params);

struct PairPlan {
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> pairs;  // first < second
};

// Distinct unordered pairs in random order; once all are used, further
// pairs are drawn with repetition. Throws BadParams.
PairPlan SamplePairs(std::vector<std::string> scene_ids, int n_pairs,
                     std::uint64_t seed);

}  // namespace rem

#endif  // REM_DATASET_IO_H_
