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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace vizobj {

using LabelId = std::int32_t;

/// One annotated object occurrence. Coordinates are frame-normalized to [0,1].
struct ObjectInstance {
    LabelId label = 0;
    std::int32_t frame = 0;
    double cx = 0.0;
    double cy = 0.0;

    friend bool operator==(const ObjectInstance&, const ObjectInstance&) = default;
};

/// Timestamp that holds `frame` when every timestamp spans `frames_per_timestamp` frames.
int partition_of(int frame, int frames_per_timestamp);

/// Frames of a video, their timestamp partition, and per-timestamp label counts.
///
/// Immutable once built. Frame i belongs to timestamp i / n_f with
/// n_f = ceil(|F| / |T|); the last timestamp may be short.
class Corpus {
public:
    /// Parse a line-delimited JSON annotation file (see README for the record schema).
    static Corpus ingest(const std::filesystem::path& path, int n_timestamps);
    static Corpus ingest(std::istream& in, int n_timestamps, std::string_view source = "<stream>");

    /// Build directly from already-normalized instances. Labels must be dense
    /// indices into `labels`; frames must be < n_frames.
    static Corpus from_instances(std::vector<std::string> labels, int n_frames, int n_timestamps,
                                 std::vector<ObjectInstance> instances);

    static Corpus load_snapshot(const std::filesystem::path& path);
    static Corpus from_json(const nlohmann::json& doc);
    nlohmann::json to_json() const;
    void save_snapshot(const std::filesystem::path& path) const;

    int n_frames() const noexcept { return static_cast<int>(frames_.size()); }
    int n_timestamps() const noexcept { return n_timestamps_; }
    int frames_per_timestamp() const noexcept { return frames_per_timestamp_; }
    int n_labels() const noexcept { return static_cast<int>(labels_.size()); }
    std::size_t n_instances() const noexcept { return n_instances_; }

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label_name(LabelId label) const;
    std::optional<LabelId> find_label(std::string_view name) const;
    /// Like find_label but throws an index error for unknown names.
    LabelId label_id(std::string_view name) const;

    std::span<const ObjectInstance> frame(int f) const;
    int timestamp_of(int frame) const;
    /// Half-open frame range [first, last) covered by timestamp t.
    std::pair<int, int> frame_range(int t) const;

    /// Count of instances of `label` in the frames of timestamp t.
    int frequency(LabelId label, int t) const;
    /// Sum over all timestamps.
    int total_frequency(LabelId label) const;
    /// Largest per-timestamp count over all labels and timestamps.
    int max_frequency() const noexcept { return max_frequency_; }
    bool present(LabelId label, int t) const { return frequency(label, t) > 0; }

    /// Sorted distinct labels occurring in frame f.
    std::vector<LabelId> labels_in_frame(int f) const;

    friend bool operator==(const Corpus&, const Corpus&) = default;

private:
    Corpus() = default;
    void build_partition();
    void check_label(LabelId label) const;
    void check_timestamp(int t) const;

    std::vector<std::string> labels_;
    std::vector<std::vector<ObjectInstance>> frames_;
    int n_timestamps_ = 0;
    int frames_per_timestamp_ = 0;
    std::size_t n_instances_ = 0;
    std::vector<int> freq_;  // row-major |O| x |T|
    std::vector<int> total_freq_;
    int max_frequency_ = 0;
};

}  // namespace vizobj
