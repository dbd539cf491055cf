// src/pipeline.cc

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

#include "rem/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "rem/rng.h"

namespace rem {

namespace fs = std::filesystem;

BundlePaths BundlePaths::FromDir(const fs::path &dir) {
  return {dir / "scenes", dir / "dataset.json", dir / "chunks.json"};
}

void RunConfig::Validate() const {
  auto bad = [](const std::string &msg) { throw Error(ErrorCode::kBadParams, msg); };
  if (top_k < 1) bad("--top-k must be >= 1");
  if (k_replace < 0 || k_replace > Panorama::kHorizontal)
    throw Error(ErrorCode::kKReplaceOutOfRange, "--k-replace must be in 0..12");
  if (n_pairs < 1) bad("--n-pairs must be >= 1");
  if (cap_per_pair < 0) bad("--cap-per-pair must be >= 0");
  if (!(sample_ratio >= 0.0 && sample_ratio <= 1.0)) bad("--sample-ratio must be in [0, 1]");
  if (jobs < 1) bad("--jobs must be >= 1");
  if (input.scene_dir.empty() || input.dataset_file.empty()) bad("input scenes and dataset are required");
  if (out_dir.empty()) bad("--out is required");
}

Json RunConfig::ToJson() const {
  return {{"seed", seed},
          {"top_k", top_k},
          {"k_replace", k_replace},
          {"orientation_align", orientation_align},
          {"view_mix", view_mix},
          {"n_pairs", n_pairs},
          {"cap_per_pair", cap_per_pair},
          {"sample_ratio", sample_ratio},
          {"scene_dir", input.scene_dir.generic_string()},
          {"dataset_file", input.dataset_file.generic_string()},
          {"chunk_file", input.chunk_file.generic_string()},
          {"merge_file", merge_file.generic_string()}};
}

void ParallelFor(std::size_t n, int jobs, const std::function<void(std::size_t)> &fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
}

void RethrowWithStage(const std::string &stage, const Error &e) {
  throw Error(e.code(), stage + ": " + e.detail());
}

PairOutput BuildPair(const DatasetBundle &bundle, const std::string &scene_a,
                     const std::string &scene_b, const KeyEdge &key_a,
                     const KeyEdge &key_b, const RunConfig &config,
                     std::uint64_t pair_seed) {
  const SceneGraph &ga = bundle.scenes.at(scene_a);
  const SceneGraph &gb = bundle.scenes.at(scene_b);
  PairOutput out;
  try {
    out.cross = CrossConnect(ga, key_a, gb, key_b);
    if (config.orientation_align) out.cross = AlignOrientation(out.cross);
    if (config.view_mix)
      out.cross = MixPanoramas(out.cross, config.k_replace, !config.orientation_align);
    const auto problems = StructuralViolations(out.cross, ga, gb);
    if (!problems.empty())
      throw Error(ErrorCode::kInvariantViolation, out.cross.scene_id + ": " + problems.front());
  } catch (const Error &e) {
    RethrowWithStage("scene_mixup", e);
  }

  try {
    std::vector<PathRecord> paths = bundle.PathsOfScene(scene_a);
    for (PathRecord &p : bundle.PathsOfScene(scene_b)) paths.push_back(std::move(p));
    std::vector<InstructionRecord> instructions;
    std::set<std::string> ids;
    for (const PathRecord &p : paths) ids.insert(p.path_id);
    for (const InstructionRecord &ins : bundle.instructions)
      if (ids.count(ins.path_id)) instructions.push_back(ins);
    out.triplets = GeneratePair(out.cross, paths, instructions,
                                {config.cap_per_pair, pair_seed});
  } catch (const Error &e) {
    RethrowWithStage("splice", e);
  }

  if (config.sample_ratio < 1.0) {
    std::vector<std::vector<VertexId>> distinct;
    for (const AugmentedTriplet &t : out.triplets)
      if (distinct.empty() || distinct.back() != t.vertices) distinct.push_back(t.vertices);
    const auto keep = static_cast<std::size_t>(
        std::floor(config.sample_ratio * static_cast<double>(distinct.size()) + 0.5));
    Rng rng(SplitMix64(pair_seed ^ 0x5a4d504c45ULL));
    rng.Shuffle(distinct);
    distinct.resize(keep);
    const std::set<std::vector<VertexId>> kept(distinct.begin(), distinct.end());
    std::erase_if(out.triplets, [&](const AugmentedTriplet &t) { return !kept.count(t.vertices); });
  }
  return out;
}

Json AugmentedDatasetToJson(const std::vector<PairOutput> &pairs) {
  Json items = Json::array();
  for (const PairOutput &po : pairs) {
    int index = 0;
    for (std::size_t i = 0; i < po.triplets.size();) {
      std::size_t j = i;
      Json instructions = Json::array();
      Json provenance = Json::array();
      while (j < po.triplets.size() && po.triplets[j].vertices == po.triplets[i].vertices) {
        const AugmentedTriplet &t = po.triplets[j];
        instructions.push_back(t.tokens);
        provenance.push_back({{"head_path", t.provenance.head_path_id},
                              {"head_instruction", t.provenance.head_variant},
                              {"tail_path", t.provenance.tail_path_id},
                              {"tail_instruction", t.provenance.tail_variant}});
        ++j;
      }
      const AugmentedTriplet &first = po.triplets[i];
      char id[32];
      std::snprintf(id, sizeof(id), "_a%04d", index++);
      items.push_back({{"path_id", po.cross.scene_id + id},
                       {"scan", po.cross.scene_id},
                       {"path", first.vertices},
                       {"instructions", std::move(instructions)},
                       {"provenance", std::move(provenance)},
                       {"junction", {first.provenance.junction.first,
                                     first.provenance.junction.second}}});
      i = j;
    }
  }
  std::sort(items.begin(), items.end(), [](const Json &a, const Json &b) {
    return a.at("path_id").get<std::string>() < b.at("path_id").get<std::string>();
  });
  return items;
}

std::vector<AugmentedTriplet> AugmentedTripletsFromJson(const Json &items) {
  std::vector<AugmentedTriplet> out;
  try {
    for (const Json &item : items) {
      const auto path = item.at("path").get<std::vector<std::string>>();
      const Json &instructions = item.at("instructions");
      const Json &provenance = item.at("provenance");
      if (instructions.size() != provenance.size())
        throw Error(ErrorCode::kParseError, item.at("path_id").get<std::string>() +
                                                ": instructions and provenance differ in length");
      const Json &junction = item.at("junction");
      for (std::size_t i = 0; i < instructions.size(); ++i) {
        AugmentedTriplet t;
        t.cross_scene_id = item.at("scan").get<std::string>();
        t.vertices = path;
        t.tokens = instructions[i].get<std::vector<std::string>>();
        const Json &p = provenance[i];
        t.provenance = {p.at("head_path").get<std::string>(), p.at("head_instruction").get<int>(),
                        p.at("tail_path").get<std::string>(), p.at("tail_instruction").get<int>(),
                        {junction.at(0).get<std::string>(), junction.at(1).get<std::string>()}};
        out.push_back(std::move(t));
      }
    }
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::kParseError, std::string("augmented dataset: ") + e.what());
  }
  return out;
}

namespace {

Json InputDigests(const BundlePaths &in) {
  Json scenes = Json::object();
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(in.scene_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const fs::path &f : files) scenes[f.filename().string()] = Fnv1aHex(ReadTextFile(f));
  Json out = {{"algorithm", "fnv1a64"},
              {"dataset", Fnv1aHex(ReadTextFile(in.dataset_file))},
              {"scenes", std::move(scenes)}};
  if (!in.chunk_file.empty()) out["chunks"] = Fnv1aHex(ReadTextFile(in.chunk_file));
  return out;
}

}  // namespace

AugmentReport RunAugment(const RunConfig &config) {
  config.Validate();
  DatasetBundle bundle;
  try {
    bundle = LoadBundle(config.input.scene_dir, config.input.dataset_file,
                        config.input.chunk_file);
  } catch (const Error &e) {
    RethrowWithStage("load", e);
  }

  // Key edges per scene. Scenes without a usable key edge cannot be mixed.
  std::vector<std::string> scene_ids;
  for (const auto &[id, g] : bundle.scenes) scene_ids.push_back(id);
  std::vector<std::optional<KeyEdge>> keys(scene_ids.size());
  std::vector<std::string> reasons(scene_ids.size());
  ParallelFor(scene_ids.size(), config.jobs, [&](std::size_t i) {
    const SceneGraph &g = bundle.scenes.at(scene_ids[i]);
    const std::vector<PathRecord> paths = bundle.PathsOfScene(scene_ids[i]);
    try {
      keys[i] = SelectKeyEdge(g, paths, config.top_k);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kNoKeyEdge) RethrowWithStage("key_select", e);
      reasons[i] = e.what();
    }
  });

  AugmentReport report;
  std::vector<std::string> eligible;
  for (std::size_t i = 0; i < scene_ids.size(); ++i) {
    if (keys[i]) {
      report.key_edges[scene_ids[i]] = *keys[i];
      eligible.push_back(scene_ids[i]);
    } else {
      report.excluded_scenes[scene_ids[i]] = reasons[i];
    }
  }

  PairPlan plan;
  try {
    plan = SamplePairs(eligible, config.n_pairs, config.seed);
  } catch (const Error &e) {
    RethrowWithStage("pair", e);
  }

  // Repeated pairs get a numbered id and their own seed.
  std::vector<std::string> pair_ids(plan.pairs.size());
  std::vector<std::uint64_t> pair_seeds(plan.pairs.size());
  std::map<std::pair<std::string, std::string>, int> seen;
  for (std::size_t i = 0; i < plan.pairs.size(); ++i) {
    const auto &[a, b] = plan.pairs[i];
    const int occurrence = seen[plan.pairs[i]]++;
    pair_ids[i] = a + "+" + b + (occurrence ? "~" + std::to_string(occurrence) : "");
    pair_seeds[i] = SplitMix64(PairSeed(config.seed, a, b) + static_cast<std::uint64_t>(occurrence));
  }

  std::vector<PairOutput> outputs(plan.pairs.size());
  ParallelFor(plan.pairs.size(), config.jobs, [&](std::size_t i) {
    const auto &[a, b] = plan.pairs[i];
    outputs[i] = BuildPair(bundle, a, b, report.key_edges.at(a), report.key_edges.at(b),
                           config, pair_seeds[i]);
    outputs[i].cross.scene_id = pair_ids[i];
    outputs[i].cross.graph =
        SceneGraph(pair_ids[i], outputs[i].cross.graph.VertexList(),
                   outputs[i].cross.graph.EdgeList(), outputs[i].cross.graph.panoramas());
    for (AugmentedTriplet &t : outputs[i].triplets) t.cross_scene_id = pair_ids[i];
  });

  // Output tree.
  try {
    const fs::path scenes_out = config.out_dir / "scenes";
    fs::create_directories(scenes_out);
    Json pairs_json = Json::array();
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      const PairOutput &po = outputs[i];
      SaveScene(po.cross.graph, scenes_out / (po.cross.scene_id + ".json"));
      WriteJsonFile(scenes_out / (po.cross.scene_id + ".manifest.json"),
                    CrossSceneSidecar(po.cross, pair_seeds[i]));
      PairDiagnostics d{po.cross.scene_id, plan.pairs[i].first, plan.pairs[i].second,
                        pair_seeds[i], CountDistinctPaths(po.triplets), po.triplets.size()};
      report.paths += d.paths;
      report.instructions += d.instructions;
      pairs_json.push_back({{"cross_scene", d.cross_scene_id},
                            {"sources", {d.scene_a, d.scene_b}},
                            {"seed", d.seed},
                            {"key_edges", {KeyEdgeToJson(po.cross.key1), KeyEdgeToJson(po.cross.key2)}},
                            {"paths", d.paths},
                            {"instructions", d.instructions}});
      report.pairs.push_back(std::move(d));
    }
    report.cross_scenes = outputs.size();

    const Json dataset = AugmentedDatasetToJson(outputs);
    WriteJsonFile(config.out_dir / "dataset.json", dataset);

    Json keys_json = Json::object();
    for (const auto &[id, k] : report.key_edges) keys_json[id] = KeyEdgeToJson(k);
    Json manifest = {
        {"format_version", 1},
        {"config", config.ToJson()},
        {"inputs", InputDigests(config.input)},
        {"counts",
         {{"source_scenes", bundle.scenes.size()},
          {"eligible_scenes", eligible.size()},
          {"cross_scenes", report.cross_scenes},
          {"paths", report.paths},
          {"instructions", report.instructions}}},
        {"excluded_scenes", report.excluded_scenes},
        {"scene_key_edges", std::move(keys_json)},
        {"pairs", std::move(pairs_json)},
        {"alignment", config.orientation_align},
        {"overlapping_coordinates_permitted", true},
    };
    WriteJsonFile(config.out_dir / "manifest.json", manifest);

    if (!config.merge_file.empty()) {
      Json merged = ReadJsonFile(config.input.dataset_file);
      for (const Json &item : dataset) merged.push_back(item);
      WriteJsonFile(config.merge_file, merged);
    }
  } catch (const Error &e) {
    RethrowWithStage("write", e);
  } catch (const fs::filesystem_error &e) {
    throw Error(ErrorCode::kIo, std::string("write: ") + e.what());
  }
  return report;
}

std::size_t ValidateReport::violation_count() const {
  std::size_t n = 0;
  for (const auto &[rule, list] : violations) n += list.size();
  return n;
}

ValidateReport RunValidate(const fs::path &scene_dir, const fs::path &dataset_file,
                           const BundlePaths &source) {
  BundlePaths src = source;
  if (src.scene_dir.empty() || src.dataset_file.empty()) {
    const fs::path manifest_file = dataset_file.parent_path() / "manifest.json";
    const Json manifest = ReadJsonFile(manifest_file);
    try {
      const Json &cfg = manifest.at("config");
      src.scene_dir = cfg.at("scene_dir").get<std::string>();
      src.dataset_file = cfg.at("dataset_file").get<std::string>();
      src.chunk_file = cfg.at("chunk_file").get<std::string>();
    } catch (const Json::exception &e) {
      throw Error(ErrorCode::kParseError, manifest_file.string() + ": " + e.what());
    }
  }
  const DatasetBundle donors = LoadBundle(src.scene_dir, src.dataset_file, src.chunk_file);

  std::map<std::string, CrossScene> cross;
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(scene_dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.ends_with(".json") && !name.ends_with(".manifest.json"))
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  ValidateReport report;
  for (const fs::path &f : files) {
    fs::path sidecar = f;
    sidecar.replace_extension(".manifest.json");
    CrossScene c = CrossSceneFromJson(ReadJsonFile(f), ReadJsonFile(sidecar));
    auto a = donors.scenes.find(c.sources[0]);
    auto b = donors.scenes.find(c.sources[1]);
    if (a == donors.scenes.end() || b == donors.scenes.end()) {
      report.violations["structure"].push_back(c.scene_id + ": source scene missing");
    } else {
      for (const std::string &v : StructuralViolations(c, a->second, b->second))
        report.violations["structure"].push_back(c.scene_id + ": " + v);
    }
    cross.emplace(c.scene_id, std::move(c));
  }

  const Json items = ReadJsonFile(dataset_file);
  report.items = items.size();
  const std::vector<AugmentedTriplet> triplets = AugmentedTripletsFromJson(items);
  report.triplets = triplets.size();
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    const AugmentedTriplet &t = triplets[i];
    auto it = cross.find(t.cross_scene_id);
    if (it == cross.end()) {
      report.violations["scene"].push_back("triplet " + std::to_string(i) + ": unknown scene " +
                                           t.cross_scene_id);
      continue;
    }
    for (const Violation &v : ValidateTriplet(t, it->second, donors))
      report.violations[v.rule].push_back(t.cross_scene_id + " triplet " + std::to_string(i) +
                                          ": " + v.detail);
  }
  return report;
}

namespace {

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

std::string RunStats(const BundlePaths &input, int top_k, const fs::path &scores_csv) {
  const DatasetBundle b = LoadBundle(input.scene_dir, input.dataset_file, input.chunk_file);
  std::ostringstream out, scores;
  out << "scene,v_s,v_t,n_e,vc_rank_s,vc_rank_t,ec_rank,effective_k,status\n";
  scores << "kind,scene,id_a,id_b,score\n";
  for (const auto &[id, g] : b.scenes) {
    const CentralityScores cs = BrandesBetweenness(g);
    for (const auto &[v, s] : cs.vertex_scores) scores << "vertex," << id << "," << v << ",," << Num(s) << "\n";
    for (const auto &[e, s] : cs.edge_scores)
      scores << "edge," << id << "," << e.u << "," << e.v << "," << Num(s) << "\n";
    try {
      const KeyEdge k = SelectKeyEdge(g, cs, b.PathsOfScene(id), top_k);
      out << id << "," << k.v_s << "," << k.v_t << "," << k.path_count << "," << k.vc_rank_s << ","
          << k.vc_rank_t << "," << k.ec_rank << "," << k.effective_k << ",ok\n";
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kNoKeyEdge) throw;
      out << id << ",,,0,0,0,0,0," << ErrorName(e.code()) << "\n";
    }
  }
  if (!scores_csv.empty()) WriteTextFile(scores_csv, scores.str());
  return out.str();
}

std::string RunMetrics(const fs::path &scene_dir, const fs::path &reference_file,
                       const fs::path &predictions_file) {
  const DatasetBundle ref = LoadBundle(scene_dir, reference_file, {}, false);
  const Json pj = ReadJsonFile(predictions_file);
  std::map<std::string, std::vector<VertexId>> predictions;
  try {
    if (pj.is_array()) {
      for (const Json &item : pj)
        predictions[item.at("path_id").get<std::string>()] =
            item.at("path").get<std::vector<std::string>>();
    } else {
      for (const auto &[id, path] : pj.items()) predictions[id] = path.get<std::vector<std::string>>();
    }
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::kParseError, predictions_file.string() + ": " + e.what());
  }

  std::ostringstream out;
  out << "# cls=unclamped success_radius=" << Num(kSuccessRadius) << "\n";
  out << "path_id,scan,tl,ne,sr,osr,spl,ndtw,sdtw,cls\n";
  double sum[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  std::size_t n = 0;
  for (const auto &[id, pred] : predictions) {
    const PathRecord *r = ref.FindPath(id);
    if (!r) throw Error(ErrorCode::kInvariantViolation, "prediction " + id + ": no reference path");
    const SceneGraph &g = ref.scenes.at(r->scene_id);
    const std::vector<Vec3> rp = Positions(r->vertices, g);
    const ReplayResult rr = Replay(pred, g, rp.back());
    const std::vector<Vec3> pp = Positions(pred, g);
    const double row[8] = {rr.trajectory_length,
                           rr.nav_error,
                           rr.success ? 1.0 : 0.0,
                           rr.oracle_success ? 1.0 : 0.0,
                           Spl(rr.success, PathLength(rp), rr.trajectory_length),
                           Ndtw(rp, pp),
                           Sdtw(rr.success, rp, pp),
                           Cls(rp, pp)};
    out << id << "," << r->scene_id;
    for (int k = 0; k < 8; ++k) {
      out << "," << Num(row[k]);
      sum[k] += row[k];
    }
    out << "\n";
    ++n;
  }
  out << "mean,";
  for (int k = 0; k < 8; ++k) out << "," << Num(n ? sum[k] / static_cast<double>(n) : 0.0);
  out << "\n";
  return out.str();
}

std::vector<std::string> RunImport(const std::vector<fs::path> &files, const fs::path &out_scene_dir,
                                   int feature_dim) {
  std::vector<std::string> warnings;
  for (const fs::path &f : files) {
    ImportResult r = ImportMatterportConnectivityFile(f, feature_dim);
    for (std::string &w : r.warnings) warnings.push_back(std::move(w));
    SaveScene(r.scene, out_scene_dir / (r.scene.scene_id() + ".json"));
  }
  return warnings;
}

void RunSynth(const SynthParams &params, const fs::path &out_dir) {
  SaveBundle(SynthGenerate(params), out_dir);
}

}  // namespace rem
