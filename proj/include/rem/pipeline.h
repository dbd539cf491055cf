// include/rem/pipeline.h

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

#ifndef REM_PIPELINE_H_
#define REM_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rem/dataset_io.h"
#include "rem/eval_metrics.h"
#include "rem/scene_mixup.h"
#include "rem/splice.h"

namespace rem {

// Input bundle locations. An empty chunk_file means "no chunks".
struct BundlePaths {
  std::filesystem::path scene_dir;
  std::filesystem::path dataset_file;
  std::filesystem::path chunk_file;

  // <dir>/scenes, <dir>/dataset.json, <dir>/chunks.json
  static BundlePaths FromDir(const std::filesystem::path &dir);
};

struct RunConfig {
  std::uint64_t seed = 0;
  int top_k = kDefaultTopK;
  int k_replace = kDefaultReplaceViews;
  bool orientation_align = true;
  bool view_mix = true;
  int n_pairs = 10;
  int cap_per_pair = kDefaultCapPerPair;
  double sample_ratio = 1.0;
  BundlePaths input;
  std::filesystem::path out_dir;
  std::filesystem::path merge_file;  // empty = no merge
  int jobs = 1;

  // Throws BadParams for out-of-range settings.
  void Validate() const;
  // Everything that determines the output, excluding out_dir and jobs.
  Json ToJson() const;
};

struct PairDiagnostics {
  std::string cross_scene_id;
  std::string scene_a;
  std::string scene_b;
  std::uint64_t seed = 0;
  std::size_t paths = 0;
  std::size_t instructions = 0;
};

struct AugmentReport {
  std::size_t cross_scenes = 0;
  std::size_t paths = 0;
  std::size_t instructions = 0;
  std::map<std::string, KeyEdge> key_edges;
  std::map<std::string, std::string> excluded_scenes;  // scene -> reason
  std::vector<PairDiagnostics> pairs;
};

// Runs fn(0..n-1) on up to `jobs` threads. The exception of the lowest
// failing index is rethrown, so failures are reported deterministically.
void ParallelFor(std::size_t n, int jobs, const std::function<void(std::size_t)> &fn);

// Re-labels an Error with the pipeline stage it came from.
[[noreturn]] void RethrowWithStage(const std::string &stage, const Error &e);

// Full augmentation: key selection, pairing, mixup, splicing, output tree.
AugmentReport RunAugment(const RunConfig &config);

// Builds one cross scene and its triplets in memory; the unit of work that
// RunAugment parallelizes.
struct PairOutput {
  CrossScene cross;
  std::vector<AugmentedTriplet> triplets;
};
PairOutput BuildPair(const DatasetBundle &bundle, const std::string &scene_a,
                     const std::string &scene_b, const KeyEdge &key_a,
                     const KeyEdge &key_b, const RunConfig &config,
                     std::uint64_t pair_seed);

// Dataset items: one per distinct path, instructions expanded, provenance
// attached. Path ids are "<cross scene>_a<index>".
Json AugmentedDatasetToJson(const std::vector<PairOutput> &pairs);
std::vector<AugmentedTriplet> AugmentedTripletsFromJson(const Json &items);

struct ValidateReport {
  std::size_t items = 0;
  std::size_t triplets = 0;
  std::map<std::string, std::vector<std::string>> violations;  // rule -> details
  std::size_t violation_count() const;
};

// Validates an augmentation output tree against its source bundle. When
// `source` is empty the input locations recorded in the manifest next to
// `dataset_file` are used.
ValidateReport RunValidate(const std::filesystem::path &scene_dir,
                           const std::filesystem::path &dataset_file,
                           const BundlePaths &source);

// Per-scene key edge lines, as CSV.
std::string RunStats(const BundlePaths &input, int top_k, const std::filesystem::path &scores_csv);

// Per-item and mean metrics of predictions against a reference dataset, as
// CSV. Predictions: [{path_id, path}] or {path_id: path}.
std::string RunMetrics(const std::filesystem::path &scene_dir,
                       const std::filesystem::path &reference_file,
                       const std::filesystem::path &predictions_file);

std::vector<std::string> RunImport(const std::vector<std::filesystem::path> &files,
                                   const std::filesystem::path &out_scene_dir,
                                   int feature_dim);

void RunSynth(const SynthParams &params, const std::filesystem::path &out_dir);

}  // namespace rem

#endif  // REM_PIPELINE_H_
