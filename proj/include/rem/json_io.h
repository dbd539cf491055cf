// include/rem/json_io.h

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

#ifndef REM_JSON_IO_H_
#define REM_JSON_IO_H_

#include <filesystem>
#include <string>

#include "json.hpp"
#include "rem/nav_graph.h"

namespace rem {

using Json = nlohmann::json;

// Rounds to 9 significant digits so emitted numbers have a fixed width
// and values re-read from disk serialize to the same bytes.
double RoundSig9(double x);

Json Vec3ToJson(const Vec3 &v);
Vec3 Vec3FromJson(const Json &j, const std::string &what);

// Compact dump plus a trailing newline. Object keys come out sorted.
std::string DumpCanonical(const Json &j);

Json ReadJsonFile(const std::filesystem::path &path);
void WriteTextFile(const std::filesystem::path &path, const std::string &text);
void WriteJsonFile(const std::filesystem::path &path, const Json &j);
std::string ReadTextFile(const std::filesystem::path &path);

// FNV-1a 64-bit digest as 16 hex digits.
std::string Fnv1aHex(const std::string &bytes);

Json SceneToJson(const SceneGraph &g);
// Parses and validates a canonical scene document, including full panorama
// coverage and, unless disabled, connectivity. Cross scenes are two halves
// by construction, so their loader turns the connectivity check off.
SceneGraph SceneFromJson(const Json &j, bool require_connected = true);

void SaveScene(const SceneGraph &g, const std::filesystem::path &path);
SceneGraph LoadScene(const std::filesystem::path &path, bool require_connected = true);

}  // namespace rem

#endif  // REM_JSON_IO_H_
