// include/rem/splice.h

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

#ifndef REM_SPLICE_H_
#define REM_SPLICE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rem/records.h"
#include "rem/scene_mixup.h"

namespace rem {

constexpr int kDefaultCapPerPair = 64;

// A supervised path cut at its first crossing of the key edge, plus (once
// SplitChunks has run) one instruction cut at the same place.
struct SplitDonor {
  std::string path_id;
  std::string scene_id;
  std::vector<VertexId> head;  // ends at one key-edge endpoint
  std::vector<VertexId> tail;  // starts at the other
  int crossing_index = 0;      // index of head.back() in the original path

  int variant = -1;            // instruction variant, -1 until split
  std::vector<Chunk> head_chunks;
  std::vector<Chunk> tail_chunks;
  std::vector<std::string> head_tokens;
  std::vector<std::string> tail_tokens;
};

// Cuts `p` at the first consecutive occurrence of the key edge, in either
// direction; nullopt when the path never crosses it.
std::optional<SplitDonor> SplitAtKeyEdge(const PathRecord &p, const KeyEdge &k);

// Chunks ending at or before the crossing go to the head. Chunks starting at
// or after the head's last vertex go to the tail, except the first chunk,
// which always belongs to the head. A chunk running across the crossing
// goes to the head. Throws MisalignedChunks.
SplitDonor SplitChunks(const InstructionRecord &instr, SplitDonor d);

struct TripletProvenance {
  std::string head_path_id;
  int head_variant = 0;
  std::string tail_path_id;
  int tail_variant = 0;
  std::pair<VertexId, VertexId> junction;  // (last head, first tail)
  friend auto operator<=>(const TripletProvenance &,
                          const TripletProvenance &) = default;
};

struct AugmentedTriplet {
  std::string cross_scene_id;
  std::vector<VertexId> vertices;
  std::vector<std::string> tokens;
  TripletProvenance provenance;
  friend bool operator==(const AugmentedTriplet &,
                         const AugmentedTriplet &) = default;
};

// Head of one donor joined to the tail of a donor from the other source
// scene. Throws InvalidJunction when the join is not a cross edge and
// InvalidSplice when the result is otherwise not a path of `c`.
AugmentedTriplet CrossSplice(const SplitDonor &head_donor,
                             const SplitDonor &tail_donor, const CrossScene &c);

struct SpliceConfig {
  int cap_per_pair = kDefaultCapPerPair;  // 0 = unlimited
  std::uint64_t seed = 0;                 // pair seed
};

// Every valid head x tail combination over both cross edges, one triplet
// per instruction pairing, subsampled to at most cap_per_pair distinct
// paths. Output is sorted by path, then provenance. Throws NoDonors when
// either source scene has no path crossing its key edge.
std::vector<AugmentedTriplet> GeneratePair(
    const CrossScene &c, std::span<const PathRecord> paths,
    std::span<const InstructionRecord> instructions, const SpliceConfig &config);

// Number of distinct vertex sequences among the triplets.
std::size_t CountDistinctPaths(std::span<const AugmentedTriplet> triplets);

}  // namespace rem

#endif  // REM_SPLICE_H_
