// tests/centrality_test.cc

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

#include <chrono>

#include "oracles.h"
#include "rem/centrality.h"

using namespace rem;
using rem::oracle::MakeScene;
using rem::oracle::ThrownCode;

namespace {

SceneGraph PathABC() {
  return MakeScene("p", {{"A", {0, 0, 0}}, {"B", {1, 0, 0}}, {"C", {2, 0, 0}}},
                   {{"A", "B"}, {"B", "C"}});
}

void ExpectSame(const CentralityScores &got, const oracle::Scores &want) {
  REQUIRE(got.vertex_scores.size() == want.vertex.size());
  REQUIRE(got.edge_scores.size() == want.edge.size());
  for (const auto &[v, s] : want.vertex) CHECK(std::fabs(got.vertex_scores.at(v) - s) <= 1e-9);
  for (const auto &[e, s] : want.edge) CHECK(std::fabs(got.edge_scores.at(e) - s) <= 1e-9);
}

// Hop distances by BFS, used for the sum identities.
std::vector<int> AllPairDistances(const SceneGraph &g) {
  std::vector<int> out;
  const auto adj = oracle::Adjacency(g);
  for (const auto &[s, _] : adj) {
    std::map<VertexId, int> d{{s, 0}};
    std::queue<VertexId> q;
    q.push(s);
    while (!q.empty()) {
      const VertexId x = q.front();
      q.pop();
      for (const VertexId &y : adj.at(x))
        if (!d.count(y)) {
          d[y] = d[x] + 1;
          q.push(y);
        }
    }
    for (const auto &[t, dist] : d)
      if (s < t) out.push_back(dist);
  }
  return out;
}

}  // namespace

TEST_CASE("path graph") {
  const CentralityScores c = BrandesBetweenness(PathABC());
  CHECK(c.vertex_scores.at("A") == 0.0);
  CHECK(c.vertex_scores.at("B") == 1.0);
  CHECK(c.vertex_scores.at("C") == 0.0);
  CHECK(c.edge_scores.at(Edge("A", "B")) == 2.0);
  CHECK(c.edge_scores.at(Edge("B", "C")) == 2.0);
  const CentralityScores bf = BruteForceBetweenness(PathABC());
  CHECK(bf.vertex_scores == c.vertex_scores);
  CHECK(bf.edge_scores == c.edge_scores);
}

TEST_CASE("star, single edge, triangle") {
  const SceneGraph star = MakeScene(
      "s", {{"c", {0, 0, 0}}, {"l1", {1, 0, 0}}, {"l2", {0, 1, 0}}, {"l3", {-1, 0, 0}}, {"l4", {0, -1, 0}}},
      {{"c", "l1"}, {"c", "l2"}, {"c", "l3"}, {"c", "l4"}});
  CHECK(VertexBetweenness(star).at("c") == 6.0);
  const SceneGraph one = MakeScene("e", {{"A", {0, 0, 0}}, {"B", {1, 0, 0}}}, {{"A", "B"}});
  CHECK(EdgeBetweenness(one).at(Edge("A", "B")) == 1.0);
  const SceneGraph tri = MakeScene("t", {{"a", {0, 0, 0}}, {"b", {1, 0, 0}}, {"c", {0, 1, 0}}},
                                   {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  for (const auto &[v, s] : BruteForceBetweenness(tri).vertex_scores) CHECK(s == 0.0);
  for (const auto &[e, s] : BrandesBetweenness(tri).edge_scores) CHECK(s == 1.0);
}

TEST_CASE("4-cycle splits pairs across two shortest paths") {
  const SceneGraph c4 = MakeScene(
      "c", {{"a", {0, 0, 0}}, {"b", {1, 0, 0}}, {"c", {1, 1, 0}}, {"d", {0, 1, 0}}},
      {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
  const CentralityScores c = BrandesBetweenness(c4);
  for (const auto &[v, s] : c.vertex_scores) CHECK(s == doctest::Approx(0.5));
  for (const auto &[e, s] : c.edge_scores) CHECK(s == doctest::Approx(2.0));
}

TEST_CASE("Brandes and brute force agree with the pair-dependency oracle") {
  Rng rng(1234);
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(rng.Below(9));  // 2..10
    const SceneGraph g = oracle::RandomConnected(rng, n, rng.Unit() * 0.6);
    const oracle::Scores want = oracle::Betweenness(g);
    ExpectSame(BrandesBetweenness(g), want);
    ExpectSame(BruteForceBetweenness(g), want);
  }
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(10));
}

TEST_CASE("up to 12 vertices") {
  Rng rng(99);
  for (int i = 0; i < 20; ++i) {
    const SceneGraph g = oracle::RandomConnected(rng, 11 + static_cast<int>(rng.Below(2)), 0.25);
    ExpectSame(BrandesBetweenness(g), oracle::Betweenness(g));
    ExpectSame(BruteForceBetweenness(g), oracle::Betweenness(g));
  }
  Rng big(3);
  const SceneGraph g13 = oracle::RandomConnected(big, 13, 0.2);
  CHECK(ThrownCode([&] { BruteForceBetweenness(g13); }) == ErrorCode::kGraphTooLarge);
}

TEST_CASE("sum identities") {
  // Summed over pairs, a shortest path of d hops has d - 1 interior vertices
  // and d edges, whichever shortest path is taken.
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const SceneGraph g = oracle::RandomConnected(rng, 2 + static_cast<int>(rng.Below(15)), 0.2);
    const CentralityScores c = BrandesBetweenness(g);
    double vsum = 0, esum = 0, interior = 0, hops = 0;
    for (const auto &[v, s] : c.vertex_scores) vsum += s;
    for (const auto &[e, s] : c.edge_scores) esum += s;
    for (int d : AllPairDistances(g)) {
      interior += d - 1;
      hops += d;
    }
    CHECK(vsum == doctest::Approx(interior).epsilon(1e-12));
    CHECK(esum == doctest::Approx(hops).epsilon(1e-12));
  }
}

TEST_CASE("relabeling leaves scores unchanged") {
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const SceneGraph g = oracle::RandomConnected(rng, 3 + static_cast<int>(rng.Below(12)), 0.2);
    std::vector<VertexId> ids;
    for (const auto &[id, v] : g.vertices()) ids.push_back(id);
    std::vector<VertexId> shuffled = ids;
    rng.Shuffle(shuffled);
    std::map<VertexId, VertexId> rename;
    for (std::size_t k = 0; k < ids.size(); ++k) rename[ids[k]] = "x" + shuffled[k];
    std::vector<Vertex> vs;
    for (const Vertex &v : g.VertexList()) vs.push_back({rename[v.id], v.position});
    std::vector<Edge> es;
    for (const Edge &e : g.EdgeList()) es.emplace_back(rename[e.u], rename[e.v]);
    const SceneGraph h("h", vs, es);
    const CentralityScores a = BrandesBetweenness(g), b = BrandesBetweenness(h);
    for (const auto &[v, s] : a.vertex_scores)
      CHECK(b.vertex_scores.at(rename[v]) == doctest::Approx(s).epsilon(1e-12));
    for (const auto &[e, s] : a.edge_scores)
      CHECK(b.edge_scores.at(Edge(rename[e.u], rename[e.v])) == doctest::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("bridges carry the most edge betweenness on a dumbbell") {
  const SceneGraph d = MakeScene(
      "d",
      {{"a1", {0, 0, 0}}, {"a2", {0, 1, 0}}, {"a3", {1, 0, 0}}, {"u", {1, 1, 0}},
       {"v", {5, 0, 0}}, {"b1", {5, 1, 0}}, {"b2", {6, 0, 0}}, {"b3", {6, 1, 0}}},
      {{"a1", "a2"}, {"a1", "a3"}, {"a1", "u"}, {"a2", "a3"}, {"a2", "u"}, {"a3", "u"},
       {"u", "v"},
       {"v", "b1"}, {"v", "b2"}, {"v", "b3"}, {"b1", "b2"}, {"b1", "b3"}, {"b2", "b3"}});
  const CentralityScores c = BrandesBetweenness(d);
  CHECK(c.edge_scores.at(Edge("u", "v")) == 16.0);
  for (const auto &[e, s] : c.edge_scores)
    if (e != Edge("u", "v")) CHECK(s < 16.0);
}

TEST_CASE("disconnected input is rejected") {
  const SceneGraph g("s", {{"a", {}}, {"b", {1, 0, 0}}, {"c", {2, 0, 0}}}, {Edge("a", "b")});
  CHECK(ThrownCode([&] { BrandesBetweenness(g); }) == ErrorCode::kDisconnectedGraph);
  CHECK(ThrownCode([&] { BruteForceBetweenness(g); }) == ErrorCode::kDisconnectedGraph);
}
