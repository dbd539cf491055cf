// tools/rem.cc

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

// Command-line entry point: synth, import, stats, augment, validate, metrics.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rem/pipeline.h"

namespace {

namespace fs = std::filesystem;
using namespace rem;

constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadParams:
    case ErrorCode::kKReplaceOutOfRange:
      return kExitConfig;
    case ErrorCode::kIo:
    case ErrorCode::kParseError:
      return kExitIo;
    default:
      return kExitValidation;
  }
}

// --input DIR, or the three explicit locations. Explicit ones win.
struct InputOptions {
  std::string dir, scenes, dataset, chunks;
  bool no_chunks = false;

  void Attach(CLI::App *app) {
    app->add_option("--input", dir, "bundle directory (scenes/, dataset.json, chunks.json)");
    app->add_option("--scenes", scenes, "scene directory");
    app->add_option("--dataset", dataset, "dataset file");
    app->add_option("--chunks", chunks, "chunk alignment file");
    app->add_flag("--no-chunks", no_chunks, "do not load chunk alignments");
  }

  BundlePaths Resolve() const {
    BundlePaths p;
    if (!dir.empty()) p = BundlePaths::FromDir(dir);
    if (!scenes.empty()) p.scene_dir = scenes;
    if (!dataset.empty()) p.dataset_file = dataset;
    if (!chunks.empty()) p.chunk_file = chunks;
    if (no_chunks) p.chunk_file.clear();
    if (p.scene_dir.empty() || p.dataset_file.empty())
      throw Error(ErrorCode::kBadParams, "give --input or both --scenes and --dataset");
    return p;
  }
};

std::uint64_t SeedFromEnv(std::uint64_t seed) {
  if (const char *env = std::getenv("REM_SEED"); env && *env) {
    char *end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw Error(ErrorCode::kBadParams, std::string("REM_SEED is not an integer: ") + env);
    return v;
  }
  return seed;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Scene mixup augmentation for navigation datasets"};
  app.require_subcommand(1);

  // synth
  SynthParams synth;
  std::string synth_out;
  auto *cmd_synth = app.add_subcommand("synth", "generate a synthetic bundle");
  cmd_synth->add_option("--seed", synth.seed);
  cmd_synth->add_option("--n-scenes", synth.n_scenes);
  cmd_synth->add_option("--rooms", synth.rooms_per_scene, "rooms per scene");
  cmd_synth->add_option("--room-size", synth.room_size, "viewpoints per room");
  cmd_synth->add_option("--paths", synth.paths_per_scene, "paths per scene");
  cmd_synth->add_option("--max-instructions", synth.max_instructions);
  cmd_synth->add_option("--feature-dim", synth.feature_dim);
  cmd_synth->add_option("--out", synth_out)->required();

  // import
  std::vector<std::string> import_files;
  std::string import_out;
  int import_dim = kDefaultFeatureDim;
  auto *cmd_import = app.add_subcommand("import", "convert connectivity files to scene JSON");
  cmd_import->add_option("files", import_files, "*_connectivity.json files")->required();
  cmd_import->add_option("--out", import_out, "output scene directory")->required();
  cmd_import->add_option("--feature-dim", import_dim);

  // stats
  InputOptions stats_in;
  int stats_k = kDefaultTopK;
  std::string stats_scores;
  auto *cmd_stats = app.add_subcommand("stats", "selected key edge per scene");
  stats_in.Attach(cmd_stats);
  cmd_stats->add_option("--top-k", stats_k);
  cmd_stats->add_option("--scores", stats_scores, "also write betweenness scores as CSV");

  // augment
  RunConfig cfg;
  InputOptions aug_in;
  std::string aug_out, aug_merge;
  bool no_align = false, no_mix = false;
  auto *cmd_augment = app.add_subcommand("augment", "cross-connect scene pairs and splice instructions");
  aug_in.Attach(cmd_augment);
  cmd_augment->add_option("--out", aug_out)->required();
  cmd_augment->add_option("--seed", cfg.seed);
  cmd_augment->add_option("--top-k", cfg.top_k);
  cmd_augment->add_option("--k-replace", cfg.k_replace, "views replaced per key vertex");
  cmd_augment->add_flag("--no-orientation-align", no_align);
  cmd_augment->add_flag("--no-view-mix", no_mix);
  cmd_augment->add_option("--n-pairs", cfg.n_pairs);
  cmd_augment->add_option("--cap-per-pair", cfg.cap_per_pair, "0 = unlimited");
  cmd_augment->add_option("--sample-ratio", cfg.sample_ratio);
  cmd_augment->add_option("--merge", aug_merge, "write original + augmented items here");
  cmd_augment->add_option("--jobs", cfg.jobs);

  // validate
  std::string val_scenes, val_dataset;
  InputOptions val_src;
  auto *cmd_validate = app.add_subcommand("validate", "check augmented triplets");
  cmd_validate->add_option("--scenes", val_scenes, "augmented scene directory")->required();
  cmd_validate->add_option("--dataset", val_dataset, "augmented dataset")->required();
  cmd_validate->add_option("--source", val_src.dir, "source bundle directory (default: from manifest)");

  // metrics
  std::string met_scenes, met_ref, met_pred, met_out;
  auto *cmd_metrics = app.add_subcommand("metrics", "score predicted paths");
  cmd_metrics->add_option("--scenes", met_scenes)->required();
  cmd_metrics->add_option("--reference", met_ref)->required();
  cmd_metrics->add_option("--predictions", met_pred)->required();
  cmd_metrics->add_option("--out", met_out, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*cmd_synth) {
      synth.seed = SeedFromEnv(synth.seed);
      RunSynth(synth, synth_out);
      std::cout << "wrote " << synth.n_scenes << " scenes to " << synth_out << "\n";
    } else if (*cmd_import) {
      std::vector<fs::path> files(import_files.begin(), import_files.end());
      for (const std::string &w : RunImport(files, import_out, import_dim))
        std::cerr << "warning: " << w << "\n";
    } else if (*cmd_stats) {
      std::cout << RunStats(stats_in.Resolve(), stats_k, stats_scores);
    } else if (*cmd_augment) {
      cfg.seed = SeedFromEnv(cfg.seed);
      cfg.orientation_align = !no_align;
      cfg.view_mix = !no_mix;
      cfg.input = aug_in.Resolve();
      cfg.out_dir = aug_out;
      cfg.merge_file = aug_merge;
      const AugmentReport r = RunAugment(cfg);
      std::cout << "cross_scenes " << r.cross_scenes << "\npaths " << r.paths
                << "\ninstructions " << r.instructions << "\n";
      for (const auto &[scene, reason] : r.excluded_scenes)
        std::cerr << "excluded " << scene << ": " << reason << "\n";
    } else if (*cmd_validate) {
      BundlePaths src;
      if (!val_src.dir.empty()) src = BundlePaths::FromDir(val_src.dir);
      const ValidateReport r = RunValidate(val_scenes, val_dataset, src);
      std::cout << r.items << " items, " << r.triplets << " triplets, "
                << r.violation_count() << " violations\n";
      for (const auto &[rule, list] : r.violations) {
        std::cout << rule << ": " << list.size() << "\n";
        for (const std::string &d : list) std::cout << "  " << d << "\n";
      }
      if (r.violation_count() > 0) return kExitValidation;
    } else if (*cmd_metrics) {
      const std::string csv = RunMetrics(met_scenes, met_ref, met_pred);
      if (met_out.empty())
        std::cout << csv;
      else
        WriteTextFile(met_out, csv);
    }
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
