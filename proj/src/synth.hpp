/* Copyright (c) 2026, vizobj contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 the "License";
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpus.hpp"

namespace vizobj {

enum class Scenario { Grid5x5, Seq4, SchoolEvent, TwoScene };

const char* to_string(Scenario scenario);
Scenario parse_scenario(const std::string& text);

struct ScenarioSpec {
    Scenario scenario = Scenario::Grid5x5;
    int n_frames = 2000;
    std::uint64_t seed = 0;
    /// Used by the school scenario (and recorded for the others).
    int n_timestamps = 10;
    void validate() const;
};

/// Annotations for one synthetic video. Labels are listed in order of first
/// appearance so that ingesting the emitted file reproduces the same ids.
struct GeneratedData {
    std::vector<std::string> labels;
    int n_frames = 0;
    std::vector<ObjectInstance> instances;  ///< sorted by frame
    nlohmann::json ground_truth;

    /// One JSON record per line: {"label", "frame", "cx", "cy"}.
    std::string annotations_jsonl() const;
    Corpus to_corpus(int n_timestamps) const;
};

/// 12 symbols per frame on a 5x5 grid: each of the three character sets
/// fills one 2x2 corner block. Ground truth: the set of every symbol.
GeneratedData gen_grid5x5(int n_frames, std::uint64_t seed);

/// Frames cycle through the 17 sequential blocks of seq4_blocks(), one block
/// per frame laid out left to right.
GeneratedData gen_seq4(int n_frames, std::uint64_t seed);

/// The 62 symbols grouped into consecutive blocks of four (two at the end of each set).
std::vector<std::vector<std::string>> seq4_blocks();

/// School surroundings with a malicious event in timestamp 3, police arriving
/// in timestamp 4, and the person of interest returning alone in timestamp 7.
/// Ground truth carries per-label per-timestamp frequencies.
GeneratedData gen_school_event(int n_frames, int n_timestamps, std::uint64_t seed);

/// Two scenes with disjoint rosters; every frame shows one scene. The camera
/// alternates between scenes in runs of kSceneRun frames, starting with a
/// seeded choice. Ground truth: the scene of every label.
inline constexpr int kSceneRun = 50;
GeneratedData gen_two_scene(int n_frames, std::uint64_t seed);

GeneratedData generate(const ScenarioSpec& spec);

/// Writes `<dir>/annotations.jsonl` and `<dir>/ground_truth.json` atomically.
void write_scenario(const GeneratedData& data, const std::filesystem::path& dir);

}  // namespace vizobj
