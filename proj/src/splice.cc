// src/splice.cc

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

#include "rem/splice.h"

#include <algorithm>
#include <map>
#include <set>

#include "rem/rng.h"

namespace rem {

std::optional<SplitDonor> SplitAtKeyEdge(const PathRecord &p, const KeyEdge &k) {
  const Edge key = k.edge();
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    const VertexId &a = p.vertices[i];
    const VertexId &b = p.vertices[i + 1];
    if (a == b || Edge(a, b) != key) continue;
    SplitDonor d;
    d.path_id = p.path_id;
    d.scene_id = p.scene_id;
    d.head.assign(p.vertices.begin(), p.vertices.begin() + i + 1);
    d.tail.assign(p.vertices.begin() + i + 1, p.vertices.end());
    d.crossing_index = static_cast<int>(i);
    return d;
  }
  return std::nullopt;
}

SplitDonor SplitChunks(const InstructionRecord &instr, SplitDonor d) {
  if (instr.path_id != d.path_id)
    throw Error(ErrorCode::kBadParams, "instruction " + instr.instruction_id() +
                                           " does not describe path " + d.path_id);
  ValidateChunks(instr, d.head.size() + d.tail.size());
  const int cross = d.crossing_index;
  d.variant = instr.variant;
  d.head_chunks.clear();
  d.tail_chunks.clear();
  for (std::size_t j = 0; j < instr.chunks.size(); ++j) {
    const Chunk &c = instr.chunks[j];
    const bool to_tail =
        j > 0 && c.path_span.last > cross && c.path_span.first >= cross;
    (to_tail ? d.tail_chunks : d.head_chunks).push_back(c);
  }
  auto tokens_of = [&](const std::vector<Chunk> &chunks) {
    std::vector<std::string> out;
    for (const Chunk &c : chunks)
      out.insert(out.end(), instr.tokens.begin() + c.token_span.begin,
                 instr.tokens.begin() + c.token_span.end);
    return out;
  };
  d.head_tokens = tokens_of(d.head_chunks);
  d.tail_tokens = tokens_of(d.tail_chunks);
  return d;
}

AugmentedTriplet CrossSplice(const SplitDonor &head_donor,
                             const SplitDonor &tail_donor, const CrossScene &c) {
  const bool sources_ok =
      head_donor.scene_id != tail_donor.scene_id &&
      (head_donor.scene_id == c.sources[0] || head_donor.scene_id == c.sources[1]) &&
      (tail_donor.scene_id == c.sources[0] || tail_donor.scene_id == c.sources[1]);
  if (!sources_ok)
    throw Error(ErrorCode::kInvalidSplice,
                "donors " + head_donor.path_id + " and " + tail_donor.path_id +
                    " must come from the two sources of " + c.scene_id);
  if (head_donor.head.empty() || tail_donor.tail.empty())
    throw Error(ErrorCode::kInvalidSplice, "empty donor segment");

  AugmentedTriplet t;
  t.cross_scene_id = c.scene_id;
  for (const VertexId &v : head_donor.head)
    t.vertices.push_back(Namespaced(head_donor.scene_id, v));
  const std::size_t junction = t.vertices.size();
  for (const VertexId &v : tail_donor.tail)
    t.vertices.push_back(Namespaced(tail_donor.scene_id, v));

  const VertexId &last = t.vertices[junction - 1];
  const VertexId &first = t.vertices[junction];
  if (!c.IsCrossEdge(last, first))
    throw Error(ErrorCode::kInvalidJunction,
                last + "->" + first + " is not a cross edge of " + c.scene_id);
  try {
    ValidatePathSteps(t.vertices, c.graph, "spliced path");
  } catch (const Error &e) {
    throw Error(ErrorCode::kInvalidSplice, e.detail());
  }

  t.tokens = head_donor.head_tokens;
  t.tokens.insert(t.tokens.end(), tail_donor.tail_tokens.begin(),
                  tail_donor.tail_tokens.end());
  t.provenance = {head_donor.path_id, head_donor.variant, tail_donor.path_id,
                  tail_donor.variant, {last, first}};
  return t;
}

namespace {

bool SegmentValid(const std::vector<VertexId> &segment, const std::string &scene,
                  const SceneGraph &g) {
  for (std::size_t i = 0; i + 1 < segment.size(); ++i)
    if (!g.HasEdge(Namespaced(scene, segment[i]), Namespaced(scene, segment[i + 1])))
      return false;
  return true;
}

}  // namespace

std::vector<AugmentedTriplet> GeneratePair(
    const CrossScene &c, std::span<const PathRecord> paths,
    std::span<const InstructionRecord> instructions, const SpliceConfig &config) {
  std::map<std::string, std::vector<const InstructionRecord *>> by_path;
  for (const InstructionRecord &ins : instructions)
    by_path[ins.path_id].push_back(&ins);

  // Split donors per source scene; heads and tails that would use a removed
  // key edge are dropped (a tail that crosses back, say).
  std::array<std::vector<SplitDonor>, 2> heads, tails;
  std::array<int, 2> crossing{0, 0};
  for (int side = 0; side < 2; ++side) {
    const std::string &scene = c.sources[side];
    const KeyEdge &key = side == 0 ? c.key1 : c.key2;
    for (const PathRecord &p : paths) {
      if (p.scene_id != scene) continue;
      std::optional<SplitDonor> d = SplitAtKeyEdge(p, key);
      if (!d) continue;
      ++crossing[side];
      const bool head_ok = SegmentValid(d->head, scene, c.graph);
      const bool tail_ok = SegmentValid(d->tail, scene, c.graph);
      auto it = by_path.find(p.path_id);
      if (it == by_path.end()) continue;
      for (const InstructionRecord *ins : it->second) {
        SplitDonor full = SplitChunks(*ins, *d);
        if (head_ok) heads[side].push_back(full);
        if (tail_ok) tails[side].push_back(std::move(full));
      }
    }
  }
  if (crossing[0] == 0 || crossing[1] == 0)
    throw Error(ErrorCode::kNoDonors,
                c.scene_id + ": scene " + c.sources[crossing[0] == 0 ? 0 : 1] +
                    " has no path crossing its key edge");

  std::map<std::vector<VertexId>, std::vector<AugmentedTriplet>> grouped;
  for (int hs = 0; hs < 2; ++hs) {
    const int ts = 1 - hs;
    for (const SplitDonor &h : heads[hs]) {
      const VertexId last = Namespaced(c.sources[hs], h.head.back());
      for (const SplitDonor &t : tails[ts]) {
        if (!c.IsCrossEdge(last, Namespaced(c.sources[ts], t.tail.front())))
          continue;
        AugmentedTriplet trip = CrossSplice(h, t, c);
        grouped[trip.vertices].push_back(std::move(trip));
      }
    }
  }

  std::vector<const std::vector<AugmentedTriplet> *> kept;
  for (const auto &[seq, group] : grouped) kept.push_back(&group);
  if (config.cap_per_pair > 0 &&
      kept.size() > static_cast<std::size_t>(config.cap_per_pair)) {
    Rng rng(config.seed);
    rng.Shuffle(kept);
    kept.resize(config.cap_per_pair);
    std::sort(kept.begin(), kept.end(), [](const auto *a, const auto *b) {
      return a->front().vertices < b->front().vertices;
    });
  }

  std::vector<AugmentedTriplet> out;
  for (const auto *group : kept) {
    std::vector<AugmentedTriplet> sorted = *group;
    std::sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) {
      return a.provenance < b.provenance;
    });
    for (auto &t : sorted) out.push_back(std::move(t));
  }
  return out;
}

std::size_t CountDistinctPaths(std::span<const AugmentedTriplet> triplets) {
  std::set<std::vector<VertexId>> seen;
  for (const AugmentedTriplet &t : triplets) seen.insert(t.vertices);
  return seen.size();
}

}  // namespace rem
