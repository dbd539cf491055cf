// src/eval_metrics.cc

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

#include "rem/eval_metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <tuple>

namespace rem {

namespace {

constexpr double kHeadingTolerance = 1e-9;

}  // namespace

std::vector<Vec3> Positions(const std::vector<VertexId> &path, const SceneGraph &scene) {
  std::vector<Vec3> out;
  out.reserve(path.size());
  for (const VertexId &v : path) out.push_back(scene.Position(v));
  return out;
}

double PathLength(std::span<const Vec3> points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) total += Distance(points[i - 1], points[i]);
  return total;
}

ReplayResult Replay(const std::vector<VertexId> &path, const SceneGraph &scene,
                    const Vec3 &goal) {
  if (path.empty()) throw Error(ErrorCode::kEmptyPath, "replay of an empty path");
  ValidatePathSteps(path, scene, "replay");
  ReplayResult r;
  const std::vector<Vec3> pts = Positions(path, scene);
  r.trajectory_length = PathLength(pts);
  r.nav_error = Distance(pts.back(), goal);
  r.success = r.nav_error <= kSuccessRadius;
  double closest = std::numeric_limits<double>::infinity();
  for (const Vec3 &p : pts) closest = std::min(closest, Distance(p, goal));
  r.oracle_success = closest <= kSuccessRadius;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Heading h = HeadingBetween(pts[i - 1], pts[i]);
    r.headings.push_back(h.radians());
    r.sectors.push_back(SectorIndex(h));
  }
  return r;
}

double Spl(bool success, double shortest_len, double actual_len) {
  if (!std::isfinite(shortest_len) || !std::isfinite(actual_len) ||
      shortest_len < 0.0 || actual_len < 0.0)
    throw Error(ErrorCode::kBadLengths, "path lengths must be finite and >= 0");
  if (!success) return 0.0;
  const double denom = std::max(shortest_len, actual_len);
  if (denom == 0.0) return 1.0;  // start is the goal
  return shortest_len / denom;
}

double DtwDistance(std::span<const Vec3> reference, std::span<const Vec3> prediction) {
  if (reference.empty() || prediction.empty())
    throw Error(ErrorCode::kEmptyPath, "DTW needs nonempty paths");
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t m = prediction.size();
  std::vector<double> prev(m + 1, inf), cur(m + 1, inf);
  prev[0] = 0.0;
  for (const Vec3 &r : reference) {
    cur[0] = inf;
    for (std::size_t j = 1; j <= m; ++j) {
      const double best = std::min({prev[j], cur[j - 1], prev[j - 1]});
      cur[j] = Distance(r, prediction[j - 1]) + best;
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double Ndtw(std::span<const Vec3> reference, std::span<const Vec3> prediction,
            double threshold) {
  const double dtw = DtwDistance(reference, prediction);
  return std::exp(-dtw / (static_cast<double>(reference.size()) * threshold));
}

double Sdtw(bool success, std::span<const Vec3> reference,
            std::span<const Vec3> prediction, double threshold) {
  return success ? Ndtw(reference, prediction, threshold) : 0.0;
}

double Cls(std::span<const Vec3> reference, std::span<const Vec3> prediction,
           double threshold) {
  if (reference.empty() || prediction.empty())
    throw Error(ErrorCode::kEmptyPath, "CLS needs nonempty paths");
  double coverage = 0.0;
  for (const Vec3 &r : reference) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const Vec3 &p : prediction) nearest = std::min(nearest, Distance(r, p));
    coverage += std::exp(-nearest / threshold);
  }
  coverage /= static_cast<double>(reference.size());
  const double expected = coverage * PathLength(reference);
  const double actual = PathLength(prediction);
  const double denom = expected + std::fabs(expected - actual);
  const double length_score = denom == 0.0 ? 1.0 : expected / denom;
  return coverage * length_score;
}

std::vector<Violation> ValidateTriplet(const AugmentedTriplet &t, const CrossScene &c,
                                       const DatasetBundle &donors) {
  std::vector<Violation> out;
  const SceneGraph &g = c.graph;

  // 1. every step is an edge of the cross scene
  bool steps_ok = !t.vertices.empty();
  if (t.vertices.empty()) out.push_back({"edge_validity", "empty path"});
  for (std::size_t i = 0; i < t.vertices.size(); ++i) {
    if (!g.HasVertex(t.vertices[i])) {
      out.push_back({"edge_validity", "step " + std::to_string(i) + " vertex " +
                                          t.vertices[i] + " not in " + c.scene_id});
      steps_ok = false;
    } else if (i > 0 && !g.HasEdge(t.vertices[i - 1], t.vertices[i])) {
      out.push_back({"edge_validity", "step " + std::to_string(i) + " " +
                                          t.vertices[i - 1] + "->" + t.vertices[i] +
                                          " is not an edge"});
      steps_ok = false;
    }
  }

  // 2. exactly one cross-edge traversal
  int crossings = 0;
  for (std::size_t i = 1; i < t.vertices.size(); ++i)
    if (c.IsCrossEdge(t.vertices[i - 1], t.vertices[i])) ++crossings;
  if (crossings != 1)
    out.push_back({"cross_edge_crossing",
                   "path crosses cross edges " + std::to_string(crossings) + " times"});

  // 3. path and tokens rebuild from the donors
  auto donor = [&](const std::string &path_id,
                   int variant) -> std::optional<SplitDonor> {
    const PathRecord *p = donors.FindPath(path_id);
    if (!p) {
      out.push_back({"token_reconstruction", "unknown donor path " + path_id});
      return std::nullopt;
    }
    int side = p->scene_id == c.sources[0] ? 0 : p->scene_id == c.sources[1] ? 1 : -1;
    if (side < 0) {
      out.push_back({"token_reconstruction",
                     "donor " + path_id + " is not from " + c.scene_id});
      return std::nullopt;
    }
    std::optional<SplitDonor> d = SplitAtKeyEdge(*p, side == 0 ? c.key1 : c.key2);
    if (!d) {
      out.push_back({"token_reconstruction",
                     "donor " + path_id + " does not cross its key edge"});
      return std::nullopt;
    }
    // Bundle instructions are sorted by (path_id, variant).
    auto it = std::lower_bound(
        donors.instructions.begin(), donors.instructions.end(),
        std::make_pair(path_id, variant), [](const InstructionRecord &x, const auto &key) {
          return std::tie(x.path_id, x.variant) < std::tie(key.first, key.second);
        });
    if (it != donors.instructions.end() && it->path_id == path_id &&
        it->variant == variant) {
      try {
        return SplitChunks(*it, *d);
      } catch (const Error &e) {
        out.push_back({"token_reconstruction", e.detail()});
        return std::nullopt;
      }
    }
    out.push_back({"token_reconstruction", "donor instruction " + path_id + "_" +
                                               std::to_string(variant) + " missing"});
    return std::nullopt;
  };
  const auto head = donor(t.provenance.head_path_id, t.provenance.head_variant);
  const auto tail = donor(t.provenance.tail_path_id, t.provenance.tail_variant);
  if (head && tail) {
    std::vector<VertexId> expect_path;
    for (const VertexId &v : head->head) expect_path.push_back(Namespaced(head->scene_id, v));
    for (const VertexId &v : tail->tail) expect_path.push_back(Namespaced(tail->scene_id, v));
    if (expect_path != t.vertices)
      out.push_back({"path_reconstruction", "path differs from donor head ++ tail"});
    std::vector<std::string> expect_tokens = head->head_tokens;
    expect_tokens.insert(expect_tokens.end(), tail->tail_tokens.begin(),
                         tail->tail_tokens.end());
    if (expect_tokens != t.tokens)
      out.push_back({"token_reconstruction",
                     "tokens differ from donor head chunks ++ tail chunks"});
  }

  // 4. junction heading matches the replaced key edge
  if (steps_ok) {
    for (const auto &[from, to] : c.cross_edges) {
      const auto &[j1, j2] = t.provenance.junction;
      if (!((j1 == from && j2 == to) || (j1 == to && j2 == from))) continue;
      char buf[160];
      try {
        const Heading now = HeadingBetween(g.Position(from), g.Position(to));
        const double diff =
            AngularDifference(now, Heading::FromRadians(c.key_headings.at(from)));
        if (diff > kHeadingTolerance) {
          std::snprintf(buf, sizeof(buf), "%s->%s mismatch %.9f deg", from.c_str(),
                        to.c_str(), diff * 180.0 / std::numbers::pi);
          out.push_back({"junction_heading", buf});
        }
      } catch (const Error &e) {
        out.push_back({"junction_heading", from + "->" + to + ": " + e.detail()});
      }
    }
  }

  // 5. panorama provenance at key vertexes
  const int expect_replaced = Panorama::kVertical * c.k_replace.value_or(0);
  for (const KeyVertexRole &role : c.KeyVertexRoles()) {
    auto it = g.panoramas().find(role.host);
    if (it == g.panoramas().end()) {
      out.push_back({"panorama_provenance", role.host + " has no panorama"});
      continue;
    }
    const std::string host_scene = SplitNamespaced(role.host).first;
    const std::string donor_scene = SplitNamespaced(role.donor).first;
    int replaced = 0;
    bool foreign = false;
    for (const ViewCell &cell : it->second.cells()) {
      if (cell.provenance.scene_id == donor_scene)
        ++replaced;
      else if (cell.provenance.scene_id != host_scene)
        foreign = true;
    }
    if (foreign || replaced != expect_replaced)
      out.push_back({"panorama_provenance",
                     role.host + " has " + std::to_string(replaced) +
                         " donor cells, expected " + std::to_string(expect_replaced)});
  }
  return out;
}

}  // namespace rem
