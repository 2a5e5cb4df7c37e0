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

#include "synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "error.hpp"
#include "io.hpp"

namespace vizobj {

const char* to_string(Scenario scenario) {
    switch (scenario) {
        case Scenario::Grid5x5: return "grid5x5";
        case Scenario::Seq4: return "seq4";
        case Scenario::SchoolEvent: return "school_event";
        case Scenario::TwoScene: return "two_scene";
    }
    return "?";
}

Scenario parse_scenario(const std::string& text) {
    if (text == "grid5x5") return Scenario::Grid5x5;
    if (text == "seq4") return Scenario::Seq4;
    if (text == "school_event" || text == "school") return Scenario::SchoolEvent;
    if (text == "two_scene") return Scenario::TwoScene;
    fail(ErrorCode::Config, "unknown scenario '" + text + "' (expected grid5x5, seq4, school_event or two_scene)");
}

void ScenarioSpec::validate() const {
    if (n_frames < 1) fail(ErrorCode::Config, "n_frames must be positive");
    if (scenario == Scenario::SchoolEvent) {
        if (n_timestamps < 8) fail(ErrorCode::Config, "school_event needs at least 8 timestamps");
        if (n_frames < n_timestamps) fail(ErrorCode::Config, "school_event needs at least one frame per timestamp");
    }
}

namespace {

/// Collects instances by label name, then assigns ids by first appearance.
class Builder {
public:
    explicit Builder(int n_frames) : n_frames_(n_frames) {}

    void add(const std::string& label, int frame, double cx, double cy) {
        auto [it, fresh] = ids_.try_emplace(label, static_cast<LabelId>(labels_.size()));
        if (fresh) labels_.push_back(label);
        instances_.push_back({it->second, frame, std::clamp(cx, 0.0, 1.0), std::clamp(cy, 0.0, 1.0)});
    }

    GeneratedData finish(nlohmann::json ground_truth) {
        std::stable_sort(instances_.begin(), instances_.end(),
                         [](const ObjectInstance& a, const ObjectInstance& b) { return a.frame < b.frame; });
        // Re-number so ids follow first appearance in frame order.
        std::vector<LabelId> remap(labels_.size(), -1);
        std::vector<std::string> ordered;
        for (auto& inst : instances_) {
            auto& r = remap[static_cast<std::size_t>(inst.label)];
            if (r < 0) {
                r = static_cast<LabelId>(ordered.size());
                ordered.push_back(labels_[static_cast<std::size_t>(inst.label)]);
            }
            inst.label = r;
        }
        GeneratedData out;
        out.labels = std::move(ordered);
        out.n_frames = n_frames_;
        out.instances = std::move(instances_);
        out.ground_truth = std::move(ground_truth);
        return out;
    }

private:
    int n_frames_;
    std::map<std::string, LabelId> ids_;
    std::vector<std::string> labels_;
    std::vector<ObjectInstance> instances_;
};

std::vector<std::string> symbol_set(int set) {
    std::vector<std::string> out;
    if (set == 0)
        for (char c = '0'; c <= '9'; ++c) out.emplace_back(1, c);
    else if (set == 1)
        for (char c = 'A'; c <= 'Z'; ++c) out.emplace_back(1, c);
    else
        for (char c = 'a'; c <= 'z'; ++c) out.emplace_back(1, c);
    return out;
}

const std::array<const char*, 3> kSetNames = {"digits", "uppercase", "lowercase"};

}  // namespace

std::string GeneratedData::annotations_jsonl() const {
    std::string out;
    for (const auto& inst : instances) {
        out += "{\"label\":";
        out += nlohmann::json(labels[static_cast<std::size_t>(inst.label)]).dump();
        out += ",\"frame\":" + std::to_string(inst.frame);
        out += ",\"cx\":" + format_double(inst.cx);
        out += ",\"cy\":" + format_double(inst.cy);
        out += "}\n";
    }
    return out;
}

Corpus GeneratedData::to_corpus(int n_timestamps) const {
    return Corpus::from_instances(labels, n_frames, n_timestamps, instances);
}

GeneratedData gen_grid5x5(int n_frames, std::uint64_t seed) {
    if (n_frames < 1) fail(ErrorCode::Config, "n_frames must be positive");
    constexpr double kCell = 0.2;
    constexpr double kJitter = 0.05 * kCell;
    const std::array<std::array<int, 2>, 4> anchors = {{{0, 0}, {0, 3}, {3, 0}, {3, 3}}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-kJitter, kJitter);
    std::array<std::vector<std::string>, 3> sets = {symbol_set(0), symbol_set(1), symbol_set(2)};

    Builder b(n_frames);
    for (int f = 0; f < n_frames; ++f) {
        std::array<int, 4> corner = {0, 1, 2, 3};
        std::shuffle(corner.begin(), corner.end(), rng);
        for (int s = 0; s < 3; ++s) {
            auto& pool = sets[static_cast<std::size_t>(s)];
            // Partial Fisher-Yates: first four entries become this frame's symbols.
            for (std::size_t i = 0; i < 4; ++i) {
                std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
                std::swap(pool[i], pool[pick(rng)]);
            }
            const auto [row0, col0] = anchors[static_cast<std::size_t>(corner[static_cast<std::size_t>(s)])];
            for (int i = 0; i < 4; ++i) {
                const int row = row0 + i / 2;
                const int col = col0 + i % 2;
                b.add(pool[static_cast<std::size_t>(i)], f, (col + 0.5) * kCell + jitter(rng),
                      (row + 0.5) * kCell + jitter(rng));
            }
        }
    }
    nlohmann::json classes = nlohmann::json::object();
    for (int s = 0; s < 3; ++s)
        for (const auto& sym : symbol_set(s)) classes[sym] = s;
    return b.finish({{"scenario", "grid5x5"},
                     {"seed", seed},
                     {"n_frames", n_frames},
                     {"class_names", kSetNames},
                     {"classes", classes}});
}

std::vector<std::vector<std::string>> seq4_blocks() {
    std::vector<std::vector<std::string>> blocks;
    for (int s = 0; s < 3; ++s) {
        const auto symbols = symbol_set(s);
        for (std::size_t i = 0; i < symbols.size(); i += 4)
            blocks.emplace_back(symbols.begin() + static_cast<std::ptrdiff_t>(i),
                                symbols.begin() + static_cast<std::ptrdiff_t>(std::min(i + 4, symbols.size())));
    }
    return blocks;
}

GeneratedData gen_seq4(int n_frames, std::uint64_t seed) {
    if (n_frames < 1) fail(ErrorCode::Config, "n_frames must be positive");
    constexpr double kSlot = 0.25;
    constexpr double kJitter = 0.05 * kSlot;
    const auto blocks = seq4_blocks();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-kJitter, kJitter);
    Builder b(n_frames);
    for (int f = 0; f < n_frames; ++f) {
        const auto& block = blocks[static_cast<std::size_t>(f) % blocks.size()];
        for (std::size_t j = 0; j < block.size(); ++j)
            b.add(block[j], f, (static_cast<double>(j) + 0.5) * kSlot + jitter(rng), 0.5 + jitter(rng));
    }
    nlohmann::json block_of = nlohmann::json::object();
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (const auto& sym : blocks[i]) block_of[sym] = i;
    return b.finish({{"scenario", "seq4"},
                     {"seed", seed},
                     {"n_frames", n_frames},
                     {"blocks", blocks},
                     {"block_of", block_of}});
}

namespace {

struct Background {
    const char* label;
    double base_rate;  ///< chance of appearing in a frame
    int copies;        ///< maximum instances per frame
};

// Background roster of the school surroundings.
const std::array<Background, 26> kSchoolRoster = {{
    {"school", 0.95, 1},
    {"building", 0.8, 2},
    {"student", 0.7, 3},
    {"pedestrian", 0.6, 2},
    {"car", 0.6, 3},
    {"office-worker", 0.4, 2},
    {"tree", 0.7, 2},
    {"bus", 0.25, 1},
    {"bicycle", 0.35, 2},
    {"dog", 0.2, 1},
    {"teacher", 0.3, 1},
    {"parent", 0.3, 2},
    {"crossing-guard", 0.25, 1},
    {"traffic-light", 0.6, 1},
    {"stop-sign", 0.5, 1},
    {"bench", 0.45, 2},
    {"trash-can", 0.4, 1},
    {"bus-stop", 0.35, 1},
    {"truck", 0.2, 1},
    {"motorcycle", 0.15, 1},
    {"playground", 0.5, 1},
    {"flagpole", 0.55, 1},
    {"fence", 0.6, 2},
    {"lamp-post", 0.5, 2},
    {"jogger", 0.15, 1},
    {"delivery-van", 0.15, 1},
}};

}  // namespace

GeneratedData gen_school_event(int n_frames, int n_timestamps, std::uint64_t seed) {
    ScenarioSpec{Scenario::SchoolEvent, n_frames, seed, n_timestamps}.validate();
    constexpr int kEventT = 3;
    constexpr int kPoliceT = 4;
    constexpr int kReturnT = 7;
    const int fpt = (n_frames + n_timestamps - 1) / n_timestamps;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> wobble(0.0, 0.03);
    auto near = [&](double c) { return std::clamp(c + wobble(rng), 0.0, 1.0); };

    // Home position of every background label per timestamp: a slow random walk.
    const std::size_t n_bg = kSchoolRoster.size();
    std::vector<std::vector<std::array<double, 2>>> home(n_bg);
    std::vector<std::vector<double>> rate(n_bg);
    for (std::size_t i = 0; i < n_bg; ++i) {
        std::array<double, 2> p = {0.15 + 0.7 * unit(rng), 0.15 + 0.7 * unit(rng)};
        for (int t = 0; t < n_timestamps; ++t) {
            if (t > 0) {
                p[0] = std::clamp(p[0] + 0.1 * (unit(rng) - 0.5), 0.1, 0.9);
                p[1] = std::clamp(p[1] + 0.1 * (unit(rng) - 0.5), 0.1, 0.9);
            }
            home[i].push_back(p);
            rate[i].push_back(std::clamp(kSchoolRoster[i].base_rate * (0.6 + 0.8 * unit(rng)), 0.05, 1.0));
        }
    }
    // Students gather around the school.
    for (int t = 0; t < n_timestamps; ++t) {
        const auto& s = home[0][static_cast<std::size_t>(t)];
        home[2][static_cast<std::size_t>(t)] = {std::clamp(s[0] - 0.08, 0.05, 0.95), std::clamp(s[1] + 0.05, 0.05, 0.95)};
    }
    const std::array<double, 2> school = home[0][static_cast<std::size_t>(kEventT)];
    const std::array<double, 2> scene = {std::clamp(school[0] + 0.15, 0.05, 0.95), std::clamp(school[1] + 0.1, 0.05, 0.95)};

    Builder b(n_frames);
    for (int f = 0; f < n_frames; ++f) {
        const int t = partition_of(f, fpt);
        const bool poi_frame = (t == kEventT && unit(rng) < 0.8) || (t == kReturnT && unit(rng) < 0.6);
        for (std::size_t i = 0; i < n_bg; ++i) {
            const std::string label = kSchoolRoster[i].label;
            // The returning person of interest is never filmed alongside students.
            if (t == kReturnT && poi_frame && label == "student") continue;
            if (unit(rng) >= rate[i][static_cast<std::size_t>(t)]) continue;
            const int copies = 1 + static_cast<int>(unit(rng) * kSchoolRoster[i].copies);
            for (int c = 0; c < copies; ++c)
                b.add(label, f, near(home[i][static_cast<std::size_t>(t)][0]), near(home[i][static_cast<std::size_t>(t)][1]));
        }
        if (t == kEventT) {
            if (unit(rng) < 0.85) b.add("malicious-event", f, near(scene[0]), near(scene[1]));
            if (poi_frame) {
                // Within 0.1 of the event site in most frames.
                b.add("person-of-interest", f, std::clamp(scene[0] + 0.04 * (unit(rng) - 0.5), 0.0, 1.0),
                      std::clamp(scene[1] + 0.04 * (unit(rng) - 0.5), 0.0, 1.0));
            }
        }
        if (t == kPoliceT && unit(rng) < 0.7) b.add("police", f, near(scene[0]), near(scene[1]));
        if (t == kReturnT && poi_frame) {
            const auto& s = home[0][static_cast<std::size_t>(kReturnT)];
            b.add("person-of-interest", f, near(s[0] + 0.05), near(s[1]));
        }
    }
    GeneratedData data = b.finish(nlohmann::json::object());

    nlohmann::json freq = nlohmann::json::object();
    std::vector<std::vector<int>> counts(data.labels.size(), std::vector<int>(static_cast<std::size_t>(n_timestamps), 0));
    for (const auto& inst : data.instances)
        ++counts[static_cast<std::size_t>(inst.label)][static_cast<std::size_t>(partition_of(inst.frame, fpt))];
    for (std::size_t l = 0; l < data.labels.size(); ++l) freq[data.labels[l]] = counts[l];
    data.ground_truth = {{"scenario", "school_event"},
                         {"seed", seed},
                         {"n_frames", n_frames},
                         {"n_timestamps", n_timestamps},
                         {"frames_per_timestamp", fpt},
                         {"event_timestamp", kEventT},
                         {"police_timestamp", kPoliceT},
                         {"return_timestamp", kReturnT},
                         {"frequencies", freq}};
    return data;
}

namespace {

const std::array<std::array<const char*, 10>, 2> kSceneRoster = {{
    {"stove", "sink", "fridge", "pot", "kettle", "cup", "plate", "oven", "toaster", "cutting-board"},
    {"car", "bus", "bicycle", "traffic-light", "stop-sign", "pedestrian", "dog", "bench", "hydrant", "truck"},
}};
const std::array<const char*, 2> kSceneNames = {"kitchen", "street"};

}  // namespace

GeneratedData gen_two_scene(int n_frames, std::uint64_t seed) {
    if (n_frames < 1) fail(ErrorCode::Config, "n_frames must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> wobble(0.0, 0.05);
    // Fixed layout per scene so each object keeps recognisable neighbors.
    std::array<std::array<std::array<double, 2>, 10>, 2> spot{};
    for (auto& scene : spot)
        for (auto& p : scene) p = {0.1 + 0.8 * unit(rng), 0.1 + 0.8 * unit(rng)};
    const std::size_t first_scene = unit(rng) < 0.5 ? 0 : 1;
    Builder b(n_frames);
    for (int f = 0; f < n_frames; ++f) {
        const std::size_t s = (first_scene + static_cast<std::size_t>(f / kSceneRun)) % 2;
        std::array<std::size_t, 10> order{};
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        const std::size_t shown = 3 + static_cast<std::size_t>(unit(rng) * 4);
        std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(shown));
        for (std::size_t j = 0; j < shown; ++j) {
            const auto& p = spot[s][order[j]];
            b.add(kSceneRoster[s][order[j]], f, std::clamp(p[0] + wobble(rng), 0.0, 1.0),
                  std::clamp(p[1] + wobble(rng), 0.0, 1.0));
        }
    }
    nlohmann::json classes = nlohmann::json::object();
    for (std::size_t s = 0; s < 2; ++s)
        for (const char* label : kSceneRoster[s]) classes[label] = s;
    return b.finish({{"scenario", "two_scene"},
                     {"seed", seed},
                     {"n_frames", n_frames},
                     {"class_names", kSceneNames},
                     {"classes", classes}});
}

GeneratedData generate(const ScenarioSpec& spec) {
    spec.validate();
    switch (spec.scenario) {
        case Scenario::Grid5x5: return gen_grid5x5(spec.n_frames, spec.seed);
        case Scenario::Seq4: return gen_seq4(spec.n_frames, spec.seed);
        case Scenario::SchoolEvent: return gen_school_event(spec.n_frames, spec.n_timestamps, spec.seed);
        case Scenario::TwoScene: return gen_two_scene(spec.n_frames, spec.seed);
    }
    fail(ErrorCode::Config, "unknown scenario");
}

void write_scenario(const GeneratedData& data, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(ErrorCode::Io, "cannot create directory " + dir.string() + ": " + ec.message());
    write_file_atomic(dir / "annotations.jsonl", data.annotations_jsonl());
    write_file_atomic(dir / "ground_truth.json", data.ground_truth.dump(2) + "\n");
}

}  // namespace vizobj
