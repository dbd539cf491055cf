// tests/eval_metrics_test.cc

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

#include <functional>

#include "oracles.h"
#include "rem/eval_metrics.h"
#include "rem/key_select.h"

using namespace rem;
using rem::oracle::MakeScene;
using rem::oracle::ThrownCode;

namespace {

// Minimum over every monotone alignment, enumerated recursively.
double DtwByEnumeration(const std::vector<Vec3> &a, const std::vector<Vec3> &b) {
  std::function<double(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) {
    const double here = Distance(a[i], b[j]);
    if (i + 1 == a.size() && j + 1 == b.size()) return here;
    double best = std::numeric_limits<double>::infinity();
    if (i + 1 < a.size()) best = std::min(best, go(i + 1, j));
    if (j + 1 < b.size()) best = std::min(best, go(i, j + 1));
    if (i + 1 < a.size() && j + 1 < b.size()) best = std::min(best, go(i + 1, j + 1));
    return here + best;
  };
  return go(0, 0);
}

std::vector<Vec3> RandomPoints(Rng &rng, int n) {
  std::vector<Vec3> out;
  for (int i = 0; i < n; ++i) out.push_back({rng.Unit() * 20 - 10, rng.Unit() * 20 - 10, 0});
  return out;
}

SceneGraph Line() {
  return MakeScene("L", {{"p0", {0, 0, 0}}, {"p1", {4, 0, 0}}, {"p2", {8, 0, 0}}, {"p3", {10, 0, 0}}},
                   {{"p0", "p1"}, {"p1", "p2"}, {"p2", "p3"}});
}

KeyEdge Key(const VertexId &a, const VertexId &b) {
  KeyEdge k;
  k.v_s = std::min(a, b);
  k.v_t = std::max(a, b);
  return k;
}

InstructionRecord PerStep(const PathRecord &p) {
  InstructionRecord r{p.path_id, 0, {}, {}};
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    r.tokens.push_back("go" + std::to_string(i));
    r.chunks.push_back({{static_cast<int>(i), static_cast<int>(i) + 1},
                        {static_cast<int>(i), static_cast<int>(i) + 1}});
  }
  return r;
}

// Two straight corridors whose naive relink misses the key heading by 60 deg.
DatasetBundle Corridors() {
  const double r3 = std::sqrt(3.0);
  DatasetBundle b;
  b.scenes.emplace("A", MakeScene("A", {{"a0", {-1, 0, 0}}, {"a_s", {0, 0, 0}}, {"a_t", {1, 0, 0}}, {"a1", {2, 0, 0}}},
                                  {{"a0", "a_s"}, {"a_s", "a_t"}, {"a_t", "a1"}}));
  b.scenes.emplace("B", MakeScene("B",
                                  {{"b0", {1, -r3 - 2, 0}}, {"b_s", {1, -r3 - 1, 0}}, {"b_t", {1, -r3, 0}},
                                   {"b1", {1, -r3 + 1, 0}}},
                                  {{"b0", "b_s"}, {"b_s", "b_t"}, {"b_t", "b1"}}));
  b.paths = {{"pa", "A", {"a0", "a_s", "a_t", "a1"}}, {"pb", "B", {"b0", "b_s", "b_t", "b1"}}};
  for (const PathRecord &p : b.paths) b.instructions.push_back(PerStep(p));
  return b;
}

struct Built {
  DatasetBundle bundle;
  CrossScene scene;
  std::vector<AugmentedTriplet> triplets;
};

Built SynthPair() {
  SynthParams sp;
  sp.n_scenes = 2;
  sp.seed = 23;
  Built out{SynthGenerate(sp), {}, {}};
  const auto it = out.bundle.scenes.begin();
  const auto &[a, ga] = *it;
  const auto &[b, gb] = *std::next(it);
  const KeyEdge ka = SelectKeyEdge(ga, out.bundle.PathsOfScene(a));
  const KeyEdge kb = SelectKeyEdge(gb, out.bundle.PathsOfScene(b));
  out.scene = MixPanoramas(AlignOrientation(CrossConnect(ga, ka, gb, kb)));
  std::vector<PathRecord> paths = out.bundle.PathsOfScene(a);
  for (const PathRecord &p : out.bundle.PathsOfScene(b)) paths.push_back(p);
  out.triplets = GeneratePair(out.scene, paths, out.bundle.instructions, {8, 1});
  return out;
}

bool HasRule(const std::vector<Violation> &vs, const std::string &rule) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation &v) { return v.rule == rule; });
}

}  // namespace

TEST_CASE("DTW matches the full-table and enumeration oracles") {
  Rng rng(21);
  for (int n = 1; n <= 12; ++n)
    for (int m = 1; m <= 12; ++m) {
      const auto a = RandomPoints(rng, n), b = RandomPoints(rng, m);
      const double got = DtwDistance(a, b);
      CHECK(std::fabs(got - oracle::Dtw(a, b)) <= 1e-9);
      if (n + m <= 12) CHECK(std::fabs(got - DtwByEnumeration(a, b)) <= 1e-9);
    }
  CHECK(ThrownCode([] { DtwDistance(std::vector<Vec3>{}, std::vector<Vec3>{{0, 0, 0}}); }) ==
        ErrorCode::kEmptyPath);
}

TEST_CASE("nDTW and sDTW") {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto a = RandomPoints(rng, 1 + static_cast<int>(rng.Below(10)));
    CHECK(Ndtw(a, a) == 1.0);
    const auto b = RandomPoints(rng, 1 + static_cast<int>(rng.Below(10)));
    const double expect = std::exp(-oracle::Dtw(a, b) / (a.size() * 3.0));
    CHECK(Ndtw(a, b) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(Sdtw(false, a, b) == 0.0);
    CHECK(Sdtw(true, a, b) == Ndtw(a, b));
  }
  // One point 3 m off along a 2-point reference: exp(-3 / 6).
  const std::vector<Vec3> ref{{0, 0, 0}, {0, 0, 0}}, pred{{3, 0, 0}};
  CHECK(Ndtw(ref, pred) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("SPL") {
  CHECK(Spl(true, 10, 12) == doctest::Approx(10.0 / 12.0).epsilon(1e-15));
  CHECK(Spl(true, 10, 8) == 1.0);
  CHECK(Spl(false, 10, 10) == 0.0);
  CHECK(Spl(true, 0, 0) == 1.0);
  CHECK(ThrownCode([] { Spl(true, -1, 2); }) == ErrorCode::kBadLengths);
  CHECK(ThrownCode([] { Spl(true, 1, std::numeric_limits<double>::infinity()); }) ==
        ErrorCode::kBadLengths);
  CHECK(ThrownCode([] { Spl(true, std::nan(""), 1); }) == ErrorCode::kBadLengths);
}

TEST_CASE("replay: success radius is inclusive") {
  const SceneGraph g = Line();
  ReplayResult r = Replay({"p0", "p1", "p2"}, g, {10.9, 0, 0});
  CHECK(r.trajectory_length == 8.0);
  CHECK(r.nav_error == doctest::Approx(2.9));
  CHECK(r.success);
  r = Replay({"p0", "p1", "p2"}, g, {11.1, 0, 0});
  CHECK(r.nav_error == doctest::Approx(3.1));
  CHECK_FALSE(r.success);
  CHECK_FALSE(r.oracle_success);
  r = Replay({"p0", "p1", "p2"}, g, {11, 0, 0});
  CHECK(r.nav_error == 3.0);
  CHECK(r.success);
  CHECK(r.headings == std::vector<double>{std::numbers::pi / 2, std::numbers::pi / 2});
  CHECK(r.sectors == std::vector<int>{3, 3});
}

TEST_CASE("replay: oracle success looks at every visited vertex") {
  const SceneGraph g = Line();
  const ReplayResult r = Replay({"p0", "p1", "p2", "p1", "p0"}, g, {8, 2, 0});
  CHECK_FALSE(r.success);
  CHECK(r.oracle_success);
  CHECK(r.trajectory_length == 16.0);
  CHECK(Replay({"p1"}, g, {4, 0, 0}).trajectory_length == 0.0);
}

TEST_CASE("replay errors") {
  const SceneGraph g = Line();
  CHECK(ThrownCode([&] { Replay({}, g, {}); }) == ErrorCode::kEmptyPath);
  CHECK(ThrownCode([&] { Replay({"p0", "p2"}, g, {}); }) == ErrorCode::kInvalidPath);
  CHECK(ThrownCode([&] { Replay({"p0", "zz"}, g, {}); }) == ErrorCode::kInvalidPath);
  try {
    Replay({"p0", "p1", "p3"}, g, {});
    FAIL("accepted a jump");
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find("p1") != std::string::npos);
    CHECK(std::string(e.what()).find("p3") != std::string::npos);
  }
}

TEST_CASE("CLS") {
  Rng rng(77);
  for (int i = 0; i < 20; ++i) {
    const auto a = RandomPoints(rng, 2 + static_cast<int>(rng.Below(8)));
    CHECK(Cls(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    const auto b = RandomPoints(rng, 2 + static_cast<int>(rng.Below(8)));
    const double c = Cls(a, b);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
  // Parallel offset by 3 m: coverage e^-1, predicted length equals reference length.
  const std::vector<Vec3> ref{{0, 0, 0}, {10, 0, 0}}, pred{{0, 3, 0}, {10, 3, 0}};
  const double pc = std::exp(-1.0);
  const double epl = pc * 10.0;
  CHECK(Cls(ref, pred) == doctest::Approx(pc * epl / (epl + std::fabs(epl - 10.0))));
  const std::vector<Vec3> still{{0, 0, 0}};
  CHECK(Cls(still, still) == 1.0);
}

TEST_CASE("validated triplets from a synthetic pair are clean") {
  const Built b = SynthPair();
  REQUIRE_FALSE(b.triplets.empty());
  for (const AugmentedTriplet &t : b.triplets) CHECK(ValidateTriplet(t, b.scene, b.bundle).empty());
}

TEST_CASE("corruptions are named by rule") {
  const Built b = SynthPair();
  REQUIRE_FALSE(b.triplets.empty());
  const AugmentedTriplet &good = b.triplets.front();

  AugmentedTriplet t = good;
  std::swap(t.vertices.front(), t.vertices.back());
  CHECK(HasRule(ValidateTriplet(t, b.scene, b.bundle), "edge_validity"));

  t = good;
  t.vertices[0] = "nowhere";
  CHECK(HasRule(ValidateTriplet(t, b.scene, b.bundle), "edge_validity"));

  t = good;
  t.tokens.back() += "x";
  const auto tok = ValidateTriplet(t, b.scene, b.bundle);
  REQUIRE(tok.size() == 1);
  CHECK(tok[0].rule == "token_reconstruction");

  t = good;
  t.provenance.head_path_id = "missing";
  CHECK(HasRule(ValidateTriplet(t, b.scene, b.bundle), "token_reconstruction"));

  // Walking the junction back and forth crosses twice.
  t = good;
  const auto &[j1, j2] = t.provenance.junction;
  const auto at = std::find(t.vertices.begin(), t.vertices.end(), j2);
  t.vertices.insert(at + 1, {j1, j2});
  CHECK(HasRule(ValidateTriplet(t, b.scene, b.bundle), "cross_edge_crossing"));

  // A host panorama replaced wholesale by its donor's.
  CrossScene swapped = b.scene;
  auto panos = b.scene.graph.panoramas();
  const auto role = b.scene.KeyVertexRoles().front();
  panos.at(role.host) = b.scene.graph.PanoramaAt(role.donor);
  swapped.graph = SceneGraph(b.scene.graph.scene_id(), b.scene.graph.VertexList(),
                             b.scene.graph.EdgeList(), panos);
  const auto sv = ValidateTriplet(good, swapped, b.bundle);
  REQUIRE(sv.size() == 1);
  CHECK(sv[0].rule == "panorama_provenance");
  CHECK(sv[0].detail.find(role.host) != std::string::npos);

  // Claimed replacement width disagrees with the cells.
  CrossScene narrower = b.scene;
  narrower.k_replace = *b.scene.k_replace - 1;
  CHECK(ValidateTriplet(good, narrower, b.bundle).size() == 4);
}

TEST_CASE("junction heading: unaligned corridors miss by 60 degrees") {
  const DatasetBundle b = Corridors();
  const CrossScene raw = CrossConnect(b.scenes.at("A"), Key("a_s", "a_t"), b.scenes.at("B"), Key("b_s", "b_t"));
  const CrossScene naive = MixPanoramas(raw, kDefaultReplaceViews, true);
  const CrossScene aligned = MixPanoramas(AlignOrientation(raw));
  const std::vector<PathRecord> paths = b.paths;
  const auto naive_t = GeneratePair(naive, paths, b.instructions, {0, 1});
  const auto aligned_t = GeneratePair(aligned, paths, b.instructions, {0, 1});
  REQUIRE(naive_t.size() == 2);
  REQUIRE(aligned_t == naive_t);
  for (const AugmentedTriplet &t : aligned_t) CHECK(ValidateTriplet(t, aligned, b).empty());
  // A/a_s -> B/b_t points 150 deg against a 90 deg key; B/b_s -> A/a_t
  // happens to keep its 0 deg heading.
  const auto vs = ValidateTriplet(naive_t[0], naive, b);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].rule == "junction_heading");
  CHECK(vs[0].detail == "A/a_s->B/b_t mismatch 60.000000000 deg");
  CHECK(ValidateTriplet(naive_t[1], naive, b).empty());
}
