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

#include "corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "error.hpp"
#include "io.hpp"

namespace vizobj {

using nlohmann::json;

int partition_of(int frame, int frames_per_timestamp) {
    return frame / frames_per_timestamp;
}

namespace {

std::string record_identity(std::string_view source, std::size_t line, const std::string& label,
                            long long frame) {
    std::ostringstream os;
    os << source << ":" << line << " (label \"" << label << "\", frame " << frame << ")";
    return os.str();
}

double number_field(const json& rec, const char* key, std::string_view source, std::size_t line) {
    auto it = rec.find(key);
    if (it == rec.end() || !it->is_number()) {
        std::ostringstream os;
        os << source << ":" << line << ": missing or non-numeric field '" << key << "'";
        fail(ErrorCode::Parse, os.str());
    }
    return it->get<double>();
}

}  // namespace

Corpus Corpus::ingest(const std::filesystem::path& path, int n_timestamps) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, "cannot open annotation file " + path.string());
    return ingest(in, n_timestamps, path.string());
}

Corpus Corpus::ingest(std::istream& in, int n_timestamps, std::string_view source) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, LabelId> index;
    std::vector<ObjectInstance> instances;
    int max_frame = -1;

    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }))
            continue;
        json rec = json::parse(text, nullptr, /*allow_exceptions=*/false);
        if (rec.is_discarded() || !rec.is_object()) {
            std::ostringstream os;
            os << source << ":" << line << ": malformed record";
            fail(ErrorCode::Parse, os.str());
        }
        auto lab = rec.find("label");
        if (lab == rec.end() || !lab->is_string()) {
            std::ostringstream os;
            os << source << ":" << line << ": missing string field 'label'";
            fail(ErrorCode::Parse, os.str());
        }
        auto fr = rec.find("frame");
        if (fr == rec.end() || !fr->is_number_integer()) {
            std::ostringstream os;
            os << source << ":" << line << ": missing integer field 'frame'";
            fail(ErrorCode::Parse, os.str());
        }
        const std::string name = lab->get<std::string>();
        const long long frame = fr->get<long long>();
        if (frame < 0 || frame > std::numeric_limits<std::int32_t>::max() - 1) {
            fail(ErrorCode::Parse, record_identity(source, line, name, frame) + ": frame index out of range");
        }

        double cx = 0.0;
        double cy = 0.0;
        if (rec.contains("w") || rec.contains("h")) {
            const double x = number_field(rec, "x", source, line);
            const double y = number_field(rec, "y", source, line);
            const double w = number_field(rec, "w", source, line);
            const double h = number_field(rec, "h", source, line);
            if (!(w > 0.0) || !(h > 0.0)) {
                fail(ErrorCode::Parse, record_identity(source, line, name, frame) + ": frame dimensions must be positive");
            }
            if (!(x >= 0.0 && x <= w && y >= 0.0 && y <= h)) {
                std::ostringstream os;
                os << record_identity(source, line, name, frame) << ": center (" << x << ", " << y
                   << ") outside frame " << w << "x" << h;
                fail(ErrorCode::Domain, os.str());
            }
            cx = x / w;
            cy = y / h;
        } else {
            cx = number_field(rec, "cx", source, line);
            cy = number_field(rec, "cy", source, line);
            if (!(cx >= 0.0 && cx <= 1.0 && cy >= 0.0 && cy <= 1.0)) {
                std::ostringstream os;
                os << record_identity(source, line, name, frame) << ": normalized center (" << cx << ", "
                   << cy << ") outside the unit square";
                fail(ErrorCode::Domain, os.str());
            }
        }

        auto [it, inserted] = index.try_emplace(name, static_cast<LabelId>(labels.size()));
        if (inserted) labels.push_back(name);
        instances.push_back({it->second, static_cast<std::int32_t>(frame), cx, cy});
        max_frame = std::max(max_frame, static_cast<int>(frame));
    }
    if (instances.empty()) fail(ErrorCode::Parse, std::string(source) + ": no instances");
    return from_instances(std::move(labels), max_frame + 1, n_timestamps, std::move(instances));
}

Corpus Corpus::from_instances(std::vector<std::string> labels, int n_frames, int n_timestamps,
                              std::vector<ObjectInstance> instances) {
    if (instances.empty()) fail(ErrorCode::InvalidArgument, "no instances");
    if (n_frames < 1) fail(ErrorCode::InvalidArgument, "corpus needs at least one frame");
    if (n_timestamps < 1) fail(ErrorCode::Config, "n_timestamps must be positive");
    if (n_timestamps > n_frames) {
        fail(ErrorCode::Config, "n_timestamps (" + std::to_string(n_timestamps) + ") exceeds frame count (" +
                                    std::to_string(n_frames) + ")");
    }
    Corpus c;
    c.labels_ = std::move(labels);
    c.frames_.resize(static_cast<std::size_t>(n_frames));
    c.n_timestamps_ = n_timestamps;
    for (const auto& inst : instances) {
        if (inst.label < 0 || inst.label >= c.n_labels())
            fail(ErrorCode::Index, "instance label " + std::to_string(inst.label) + " not in label table");
        if (inst.frame < 0 || inst.frame >= n_frames)
            fail(ErrorCode::Index, "instance frame " + std::to_string(inst.frame) + " out of range");
        if (!(inst.cx >= 0.0 && inst.cx <= 1.0 && inst.cy >= 0.0 && inst.cy <= 1.0))
            fail(ErrorCode::Domain, "instance coordinates outside the unit square");
        c.frames_[static_cast<std::size_t>(inst.frame)].push_back(inst);
    }
    c.n_instances_ = instances.size();
    c.build_partition();
    for (LabelId k = 0; k < c.n_labels(); ++k) {
        if (c.total_freq_[static_cast<std::size_t>(k)] == 0)
            fail(ErrorCode::InvalidArgument, "label \"" + c.labels_[static_cast<std::size_t>(k)] + "\" has no instances");
    }
    return c;
}

void Corpus::build_partition() {
    const int n_frames = static_cast<int>(frames_.size());
    frames_per_timestamp_ = (n_frames + n_timestamps_ - 1) / n_timestamps_;
    const auto n_labels = labels_.size();
    freq_.assign(n_labels * static_cast<std::size_t>(n_timestamps_), 0);
    total_freq_.assign(n_labels, 0);
    for (int f = 0; f < n_frames; ++f) {
        const int t = partition_of(f, frames_per_timestamp_);
        for (const auto& inst : frames_[static_cast<std::size_t>(f)]) {
            ++freq_[static_cast<std::size_t>(inst.label) * static_cast<std::size_t>(n_timestamps_) +
                    static_cast<std::size_t>(t)];
            ++total_freq_[static_cast<std::size_t>(inst.label)];
        }
    }
    max_frequency_ = freq_.empty() ? 0 : *std::max_element(freq_.begin(), freq_.end());
}

void Corpus::check_label(LabelId label) const {
    if (label < 0 || label >= n_labels())
        fail(ErrorCode::Index, "label id " + std::to_string(label) + " out of range [0, " +
                                   std::to_string(n_labels()) + ")");
}

void Corpus::check_timestamp(int t) const {
    if (t < 0 || t >= n_timestamps_)
        fail(ErrorCode::Index, "timestamp " + std::to_string(t) + " out of range [0, " +
                                   std::to_string(n_timestamps_) + ")");
}

const std::string& Corpus::label_name(LabelId label) const {
    check_label(label);
    return labels_[static_cast<std::size_t>(label)];
}

std::optional<LabelId> Corpus::find_label(std::string_view name) const {
    auto it = std::find(labels_.begin(), labels_.end(), name);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<LabelId>(it - labels_.begin());
}

LabelId Corpus::label_id(std::string_view name) const {
    auto id = find_label(name);
    if (!id) fail(ErrorCode::Index, "unknown label \"" + std::string(name) + "\"");
    return *id;
}

std::span<const ObjectInstance> Corpus::frame(int f) const {
    if (f < 0 || f >= n_frames()) fail(ErrorCode::Index, "frame " + std::to_string(f) + " out of range");
    return frames_[static_cast<std::size_t>(f)];
}

int Corpus::timestamp_of(int frame) const {
    if (frame < 0 || frame >= n_frames()) fail(ErrorCode::Index, "frame " + std::to_string(frame) + " out of range");
    return partition_of(frame, frames_per_timestamp_);
}

std::pair<int, int> Corpus::frame_range(int t) const {
    check_timestamp(t);
    const int first = t * frames_per_timestamp_;
    const int last = std::min(n_frames(), first + frames_per_timestamp_);
    return {std::min(first, n_frames()), last};
}

int Corpus::frequency(LabelId label, int t) const {
    check_label(label);
    check_timestamp(t);
    return freq_[static_cast<std::size_t>(label) * static_cast<std::size_t>(n_timestamps_) + static_cast<std::size_t>(t)];
}

int Corpus::total_frequency(LabelId label) const {
    check_label(label);
    return total_freq_[static_cast<std::size_t>(label)];
}

std::vector<LabelId> Corpus::labels_in_frame(int f) const {
    std::vector<LabelId> out;
    for (const auto& inst : frame(f)) out.push_back(inst.label);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

json Corpus::to_json() const {
    json label_col = json::array(), frame_col = json::array(), cx_col = json::array(), cy_col = json::array();
    for (const auto& fr : frames_) {
        for (const auto& inst : fr) {
            label_col.push_back(inst.label);
            frame_col.push_back(inst.frame);
            cx_col.push_back(inst.cx);
            cy_col.push_back(inst.cy);
        }
    }
    json doc;
    doc["format"] = "vizobj-corpus";
    doc["version"] = 1;
    doc["labels"] = labels_;
    doc["n_frames"] = n_frames();
    doc["n_timestamps"] = n_timestamps_;
    doc["frames_per_timestamp"] = frames_per_timestamp_;
    doc["instances"] = {{"label", label_col}, {"frame", frame_col}, {"cx", cx_col}, {"cy", cy_col}};
    return doc;
}

Corpus Corpus::from_json(const json& doc) {
    try {
        if (doc.value("format", "") != "vizobj-corpus") fail(ErrorCode::Parse, "not a corpus snapshot");
        const auto& inst = doc.at("instances");
        const auto& label_col = inst.at("label");
        const auto& frame_col = inst.at("frame");
        const auto& cx_col = inst.at("cx");
        const auto& cy_col = inst.at("cy");
        const std::size_t n = label_col.size();
        if (frame_col.size() != n || cx_col.size() != n || cy_col.size() != n)
            fail(ErrorCode::Parse, "corpus snapshot instance columns differ in length");
        std::vector<ObjectInstance> instances;
        instances.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            instances.push_back({label_col[i].get<LabelId>(), frame_col[i].get<std::int32_t>(),
                                 cx_col[i].get<double>(), cy_col[i].get<double>()});
        }
        Corpus c = from_instances(doc.at("labels").get<std::vector<std::string>>(), doc.at("n_frames").get<int>(),
                                  doc.at("n_timestamps").get<int>(), std::move(instances));
        if (doc.contains("frames_per_timestamp") && doc["frames_per_timestamp"].get<int>() != c.frames_per_timestamp())
            fail(ErrorCode::Parse, "corpus snapshot frames_per_timestamp inconsistent with frame count");
        return c;
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("corpus snapshot: ") + e.what());
    }
}

Corpus Corpus::load_snapshot(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) fail(ErrorCode::Parse, path.string() + ": invalid JSON");
    return from_json(doc);
}

void Corpus::save_snapshot(const std::filesystem::path& path) const {
    write_file_atomic(path, to_json().dump() + "\n");
}

}  // namespace vizobj
