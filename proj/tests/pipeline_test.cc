// tests/pipeline_test.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <sstream>

#include "oracles.h"
#include "rem/pipeline.h"

using namespace rem;
using rem::oracle::TempDir;
using rem::oracle::ThrownCode;
namespace fs = std::filesystem;

namespace {

// One synthetic source bundle shared by every case.
const fs::path &Source() {
  static TempDir dir("pipe_src");
  static const bool made = [] {
    SynthParams p;
    p.seed = 7;
    RunSynth(p, dir.path);
    return true;
  }();
  (void)made;
  return dir.path;
}

RunConfig Config(const fs::path &out) {
  RunConfig c;
  c.seed = 7;
  c.n_pairs = 5;
  c.input = BundlePaths::FromDir(Source());
  c.out_dir = out;
  return c;
}

std::map<std::string, std::string> Tree(const fs::path &root) {
  std::map<std::string, std::string> out;
  for (const auto &e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = ReadTextFile(e.path());
  return out;
}

std::vector<std::string> Lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("augment writes a consistent tree") {
  TempDir out("pipe_out");
  const AugmentReport r = RunAugment(Config(out.path));
  CHECK(r.cross_scenes == 5);
  CHECK(r.key_edges.size() == 10);
  CHECK(r.excluded_scenes.empty());

  int scene_files = 0, sidecars = 0;
  for (const auto &e : fs::directory_iterator(out.path / "scenes")) {
    const std::string name = e.path().filename().string();
    if (name.ends_with(".manifest.json"))
      ++sidecars;
    else
      ++scene_files;
  }
  CHECK(scene_files == 5);
  CHECK(sidecars == 5);

  const Json manifest = ReadJsonFile(out.path / "manifest.json");
  const Json dataset = ReadJsonFile(out.path / "dataset.json");
  std::size_t instructions = 0;
  std::set<std::string> ids;
  for (const Json &item : dataset) {
    instructions += item.at("instructions").size();
    CHECK(item.at("instructions").size() == item.at("provenance").size());
    ids.insert(item.at("path_id").get<std::string>());
    CHECK(fs::exists(out.path / "scenes" / (item.at("scan").get<std::string>() + ".json")));
  }
  CHECK(ids.size() == dataset.size());
  CHECK(manifest["counts"]["cross_scenes"] == 5);
  CHECK(manifest["counts"]["source_scenes"] == 10);
  CHECK(manifest["counts"]["paths"] == dataset.size());
  CHECK(manifest["counts"]["instructions"] == instructions);
  CHECK(r.paths == dataset.size());
  CHECK(r.instructions == instructions);
  CHECK(instructions >= dataset.size());
  CHECK(manifest["pairs"].size() == 5);
  CHECK(manifest["alignment"] == true);
  CHECK(manifest["config"]["seed"] == 7);
  CHECK_FALSE(manifest["config"].contains("out_dir"));
  CHECK_FALSE(manifest["config"].contains("jobs"));
  CHECK(manifest["inputs"]["scenes"].size() == 10);

  // Dataset items round-trip through the triplet reader.
  const auto trips = AugmentedTripletsFromJson(dataset);
  CHECK(trips.size() == instructions);
  CHECK(AugmentedDatasetToJson({}).empty());
}

TEST_CASE("output is byte-identical across runs and thread counts") {
  TempDir a("pipe_det_a"), b("pipe_det_b");
  RunConfig ca = Config(a.path), cb = Config(b.path);
  cb.jobs = 4;
  RunAugment(ca);
  RunAugment(cb);
  const auto ta = Tree(a.path), tb = Tree(b.path);
  CHECK(ta.size() == 12);
  CHECK(ta == tb);

  TempDir c("pipe_det_c");
  RunConfig cc = Config(c.path);
  cc.seed = 8;
  RunAugment(cc);
  CHECK(Tree(c.path) != ta);
}

TEST_CASE("validation of a clean run") {
  TempDir out("pipe_val");
  const AugmentReport r = RunAugment(Config(out.path));
  const ValidateReport v = RunValidate(out.path / "scenes", out.path / "dataset.json", {});
  CHECK(v.items == r.paths);
  CHECK(v.triplets == r.instructions);
  CHECK(v.violation_count() == 0);
  // Explicit source gives the same verdict.
  const ValidateReport w =
      RunValidate(out.path / "scenes", out.path / "dataset.json", BundlePaths::FromDir(Source()));
  CHECK(w.violation_count() == 0);
}

TEST_CASE("validation names corruptions") {
  TempDir out("pipe_corrupt");
  RunAugment(Config(out.path));
  Json dataset = ReadJsonFile(out.path / "dataset.json");
  dataset[0]["instructions"][0].push_back("extra");
  WriteJsonFile(out.path / "dataset.json", dataset);
  ValidateReport v = RunValidate(out.path / "scenes", out.path / "dataset.json", {});
  CHECK(v.violation_count() == 1);
  CHECK(v.violations.count("token_reconstruction"));

  dataset[0]["scan"] = "nowhere";
  WriteJsonFile(out.path / "dataset.json", dataset);
  v = RunValidate(out.path / "scenes", out.path / "dataset.json", {});
  CHECK(v.violations.count("scene"));

  // Removing a cross edge from a scene breaks its structure.
  const std::string scan = ReadJsonFile(out.path / "dataset.json")[1]["scan"];
  const fs::path scene_file = out.path / "scenes" / (scan + ".json");
  Json scene = ReadJsonFile(scene_file);
  const Json sidecar = ReadJsonFile(out.path / "scenes" / (scan + ".manifest.json"));
  const Json cross = sidecar["cross_edges"][0];
  Json kept = Json::array();
  for (const Json &e : scene["edges"])
    if (!((e[0] == cross[0] && e[1] == cross[1]) || (e[0] == cross[1] && e[1] == cross[0])))
      kept.push_back(e);
  scene["edges"] = kept;
  WriteJsonFile(scene_file, scene);
  v = RunValidate(out.path / "scenes", out.path / "dataset.json", {});
  CHECK(v.violations.count("structure"));

  WriteTextFile(out.path / "dataset.json", "[]");
  v = RunValidate(out.path / "scenes", out.path / "dataset.json", {});
  CHECK(v.items == 0);
  CHECK(v.violations.count("structure"));
}

TEST_CASE("an empty augmented dataset validates with zero items") {
  TempDir out("pipe_empty");
  RunAugment(Config(out.path));
  WriteTextFile(out.path / "dataset.json", "[]");
  const ValidateReport v = RunValidate(out.path / "scenes", out.path / "dataset.json", {});
  CHECK(v.items == 0);
  CHECK(v.triplets == 0);
  CHECK(v.violation_count() == 0);
}

TEST_CASE("skipping alignment is caught by the junction check") {
  TempDir out("pipe_noalign");
  RunConfig c = Config(out.path);
  c.orientation_align = false;
  RunAugment(c);
  CHECK(ReadJsonFile(out.path / "manifest.json")["alignment"] == false);
  const ValidateReport v = RunValidate(out.path / "scenes", out.path / "dataset.json", {});
  REQUIRE(v.violations.count("junction_heading"));
  CHECK(v.violations.size() == 1);
  CHECK(v.violations.at("junction_heading").front().find("mismatch") != std::string::npos);
}

TEST_CASE("view mixing can be switched off") {
  TempDir out("pipe_nomix");
  RunConfig c = Config(out.path);
  c.view_mix = false;
  RunAugment(c);
  const Json side = ReadJsonFile(*std::find_if(
      fs::directory_iterator(out.path / "scenes"), fs::directory_iterator(),
      [](const auto &e) { return e.path().string().ends_with(".manifest.json"); }));
  CHECK(side["k_replace"].is_null());
  CHECK(RunValidate(out.path / "scenes", out.path / "dataset.json", {}).violation_count() == 0);
}

TEST_CASE("merge keeps the originals first") {
  TempDir out("pipe_merge");
  RunConfig c = Config(out.path);
  c.merge_file = out.path / "merged.json";
  RunAugment(c);
  const Json original = ReadJsonFile(Source() / "dataset.json");
  const Json augmented = ReadJsonFile(out.path / "dataset.json");
  const Json merged = ReadJsonFile(out.path / "merged.json");
  REQUIRE(merged.size() == original.size() + augmented.size());
  for (std::size_t i = 0; i < original.size(); ++i) CHECK(merged[i] == original[i]);
  for (std::size_t i = 0; i < augmented.size(); ++i) CHECK(merged[original.size() + i] == augmented[i]);
}

TEST_CASE("sample ratio keeps a rounded share of each pair's paths") {
  TempDir full("pipe_full"), half("pipe_half"), none("pipe_none");
  const AugmentReport rf = RunAugment(Config(full.path));
  RunConfig c = Config(half.path);
  c.sample_ratio = 0.5;
  const AugmentReport rh = RunAugment(c);
  REQUIRE(rf.pairs.size() == rh.pairs.size());
  for (std::size_t i = 0; i < rf.pairs.size(); ++i) {
    CHECK(rh.pairs[i].cross_scene_id == rf.pairs[i].cross_scene_id);
    CHECK(rh.pairs[i].paths == static_cast<std::size_t>(std::floor(0.5 * rf.pairs[i].paths + 0.5)));
  }
  c = Config(none.path);
  c.sample_ratio = 0.0;
  CHECK(RunAugment(c).paths == 0);
}

TEST_CASE("config errors") {
  TempDir out("pipe_cfg");
  auto code = [&](auto mutate) {
    RunConfig c = Config(out.path);
    mutate(c);
    return ThrownCode([&] { RunAugment(c); });
  };
  CHECK(code([](RunConfig &c) { c.k_replace = 13; }) == ErrorCode::kKReplaceOutOfRange);
  CHECK(code([](RunConfig &c) { c.k_replace = -1; }) == ErrorCode::kKReplaceOutOfRange);
  CHECK(code([](RunConfig &c) { c.top_k = 0; }) == ErrorCode::kBadParams);
  CHECK(code([](RunConfig &c) { c.n_pairs = 0; }) == ErrorCode::kBadParams);
  CHECK(code([](RunConfig &c) { c.cap_per_pair = -1; }) == ErrorCode::kBadParams);
  CHECK(code([](RunConfig &c) { c.sample_ratio = 1.5; }) == ErrorCode::kBadParams);
  CHECK(code([](RunConfig &c) { c.jobs = 0; }) == ErrorCode::kBadParams);
  CHECK(code([](RunConfig &c) { c.out_dir.clear(); }) == ErrorCode::kBadParams);
  CHECK(code([&](RunConfig &c) { c.input.scene_dir = out.path / "missing"; }) == ErrorCode::kIo);
  try {
    RunConfig c = Config(out.path);
    c.input.dataset_file = out.path / "missing.json";
    RunAugment(c);
    FAIL("missing input accepted");
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find("load: ") != std::string::npos);
  }
}

TEST_CASE("ParallelFor") {
  for (int jobs : {1, 2, 3, 8}) {
    std::vector<int> out(100, 0);
    ParallelFor(out.size(), jobs, [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * i));
    try {
      ParallelFor(50, jobs, [](std::size_t i) {
        if (i % 7 == 3) throw Error(ErrorCode::kInvalidPath, "index " + std::to_string(i));
      });
      FAIL("no exception");
    } catch (const Error &e) {
      CHECK(e.detail() == "index 3");
    }
  }
  std::atomic<int> calls = 0;
  ParallelFor(0, 4, [&](std::size_t) { ++calls; });
  CHECK(calls == 0);
}

TEST_CASE("metrics of the reference against itself") {
  TempDir out("pipe_metrics");
  RunAugment(Config(out.path));
  const std::string csv =
      RunMetrics(out.path / "scenes", out.path / "dataset.json", out.path / "dataset.json");
  const auto lines = Lines(csv);
  REQUIRE(lines.size() >= 3);
  CHECK(lines[0] == "# cls=unclamped success_radius=3");
  CHECK(lines[1] == "path_id,scan,tl,ne,sr,osr,spl,ndtw,sdtw,cls");
  CHECK(lines.back().starts_with("mean,,"));
  CHECK(lines.back().ends_with(",0,1,1,1,1,1,1"));
  CHECK(lines.size() == ReadJsonFile(out.path / "dataset.json").size() + 3);

  // Map-form predictions that stop at the start vertex.
  Json preds = Json::object();
  for (const Json &item : ReadJsonFile(out.path / "dataset.json"))
    preds[item["path_id"].get<std::string>()] = Json::array({item["path"][0]});
  WriteJsonFile(out.path / "preds.json", preds);
  const auto short_lines = Lines(RunMetrics(out.path / "scenes", out.path / "dataset.json", out.path / "preds.json"));
  CHECK(short_lines.back().starts_with("mean,,0,"));
  CHECK(short_lines.size() == lines.size());

  // Only predicted paths are scored; unknown ids are an error.
  preds.erase(preds.begin());
  WriteJsonFile(out.path / "preds.json", preds);
  CHECK(Lines(RunMetrics(out.path / "scenes", out.path / "dataset.json", out.path / "preds.json")).size() ==
        lines.size() - 1);
  preds["bogus"] = Json::array({"x"});
  WriteJsonFile(out.path / "preds.json", preds);
  CHECK(ThrownCode([&] {
          RunMetrics(out.path / "scenes", out.path / "dataset.json", out.path / "preds.json");
        }) == ErrorCode::kInvariantViolation);
}

TEST_CASE("stats lists each scene's key edge") {
  TempDir out("pipe_stats");
  const std::string csv = RunStats(BundlePaths::FromDir(Source()), kDefaultTopK, out.path / "scores.csv");
  const auto lines = Lines(csv);
  REQUIRE(lines.size() == 11);
  CHECK(lines[0] == "scene,v_s,v_t,n_e,vc_rank_s,vc_rank_t,ec_rank,effective_k,status");
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(lines[i].ends_with(",ok"));
  const auto scores = Lines(ReadTextFile(out.path / "scores.csv"));
  CHECK(scores[0] == "kind,scene,id_a,id_b,score");
  std::size_t expect = 1;
  for (const auto &[id, g] : LoadSceneDir(Source() / "scenes")) expect += g.num_vertices() + g.num_edges();
  CHECK(scores.size() == expect);
}

TEST_CASE("stage labels") {
  try {
    RethrowWithStage("splice", Error(ErrorCode::kNoDonors, "s1+s2"));
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kNoDonors);
    CHECK(e.detail() == "splice: s1+s2");
  }
}
