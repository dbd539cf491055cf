// include/rem/eval_metrics.h

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

#ifndef REM_EVAL_METRICS_H_
#define REM_EVAL_METRICS_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "rem/dataset_io.h"
#include "rem/scene_mixup.h"
#include "rem/splice.h"

namespace rem {

// Goal radius for success, in meters. Also the nDTW / CLS distance scale.
constexpr double kSuccessRadius = 3.0;

struct ReplayResult {
  double trajectory_length = 0.0;  // meters
  double nav_error = 0.0;          // meters from the goal
  bool success = false;
  bool oracle_success = false;
  std::vector<double> headings;    // radians, one per step
  std::vector<int> sectors;
};

// Throws InvalidPath naming the first bad step, EmptyPath.
ReplayResult Replay(const std::vector<VertexId> &path, const SceneGraph &scene,
                    const Vec3 &goal);

// success ? shortest / max(shortest, actual) : 0. Throws BadLengths on
// negative or non-finite lengths.
double Spl(bool success, double shortest_len, double actual_len);

// Monotone DTW with Euclidean ground distance, two-row dynamic program.
double DtwDistance(std::span<const Vec3> reference, std::span<const Vec3> prediction);

// exp(-DTW / (|reference| * threshold)). Throws EmptyPath.
double Ndtw(std::span<const Vec3> reference, std::span<const Vec3> prediction,
            double threshold = kSuccessRadius);
double Sdtw(bool success, std::span<const Vec3> reference,
            std::span<const Vec3> prediction, double threshold = kSuccessRadius);

// Coverage weighted by length score: PC * LS with
// PC = mean_r exp(-d(r, P) / threshold), EPL = PC * PL(R),
// LS = EPL / (EPL + |EPL - PL(P)|). Unclamped form.
double Cls(std::span<const Vec3> reference, std::span<const Vec3> prediction,
           double threshold = kSuccessRadius);

double PathLength(std::span<const Vec3> points);
std::vector<Vec3> Positions(const std::vector<VertexId> &path, const SceneGraph &scene);

struct Violation {
  std::string rule;
  std::string detail;
};

// Donor data for validation: the source bundle the triplets came from.
// Checks edge validity, a single cross-edge crossing, token reconstruction
// from donor chunks, junction heading restoration, and the panorama
// provenance pattern at the four key vertexes.
std::vector<Violation> ValidateTriplet(const AugmentedTriplet &t, const CrossScene &c,
                                       const DatasetBundle &donors);

}  // namespace rem

#endif  // REM_EVAL_METRICS_H_
