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

#include "config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

#include "error.hpp"
#include "io.hpp"

namespace vizobj {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
    fail(ErrorCode::Config, "invalid value '" + value + "' for " + key + " (expected " + expected + ")");
}

int to_int(const std::string& key, const std::string& v) {
    int out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) bad_value(key, v, "an integer");
    return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) bad_value(key, v, "a nonnegative integer");
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(out)) bad_value(key, v, "a number");
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    bad_value(key, v, "true or false");
}

std::string from_bool(bool b) { return b ? "true" : "false"; }

struct Entry {
    RunConfig::KeyInfo info;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

#define VZ_INT(name, field, help) \
    Entry{{name, help}, [](RunConfig& c, const std::string& v) { c.field = to_int(name, v); }, \
          [](const RunConfig& c) { return std::to_string(c.field); }}
#define VZ_U64(name, field, help) \
    Entry{{name, help}, [](RunConfig& c, const std::string& v) { c.field = to_u64(name, v); }, \
          [](const RunConfig& c) { return std::to_string(c.field); }}
#define VZ_DBL(name, field, help) \
    Entry{{name, help}, [](RunConfig& c, const std::string& v) { c.field = to_double(name, v); }, \
          [](const RunConfig& c) { return format_double(c.field); }}
#define VZ_BOOL(name, field, help) \
    Entry{{name, help}, [](RunConfig& c, const std::string& v) { c.field = to_bool(name, v); }, \
          [](const RunConfig& c) { return from_bool(c.field); }}

const std::vector<Entry>& table() {
    static const std::vector<Entry> entries = {
        VZ_BOOL("same_frame", context.mechanisms.same_frame,
                "context 1: pair every instance with the other labels in its frame"),
        VZ_BOOL("surrounding_frames", context.mechanisms.surrounding_frames,
                "context 2: pair with labels from frames within w_f that are absent from the reference frame"),
        VZ_BOOL("neighbor_timestamps", context.mechanisms.neighbor_timestamps,
                "context 3: pair with labels from timestamps within w_t that are absent from the reference timestamp"),
        VZ_INT("w_f", context.w_f, "surrounding-frame window radius in frames"),
        VZ_INT("w_t", context.w_t, "neighbor-timestamp window radius in timestamps"),
        VZ_BOOL("frame_diffusion", context.frame_diffusion,
                "damp surrounding-frame scores by one minus the Gaussian frame weight"),
        VZ_INT("negatives", context.negatives_per_positive,
               "negatives drawn per positive pair, weighted by frequency outside the reference timestamp"),
        Entry{{"score_method", "discrepancy score: threshold, minmax (distance over the diagonal) or gaussian (one minus the Gaussian decay)"},
              [](RunConfig& c, const std::string& v) { c.scorer.method = parse_score_method(v); },
              [](const RunConfig& c) { return std::string(to_string(c.scorer.method)); }},
        VZ_DBL("d_theta", scorer.d_theta, "threshold scorer cut-off distance (unit-square units)"),
        VZ_DBL("sigma_d", scorer.sigma_d, "Gaussian scorer spatial width (unit-square units)"),
        Entry{{"sigma_t", "width of the Gaussian weight across timestamps and frames"},
              [](RunConfig& c, const std::string& v) { c.train.sigma_t = c.context.sigma_t = to_double("sigma_t", v); },
              [](const RunConfig& c) { return format_double(c.train.sigma_t); }},
        VZ_DBL("sigma_f", train.sigma_f, "frequency decay width; 0 picks half the busiest per-timestamp count"),
        VZ_DBL("epsilon", train.epsilon, "smoothing constant of the normalized frequency"),
        Entry{{"objective", "t1s (static), t1 (slice match), t2 (diffused), t3..t9 (frequency-aware diffused variants)"},
              [](RunConfig& c, const std::string& v) { c.train.objective = parse_objective(v); },
              [](const RunConfig& c) { return std::string(to_string(c.train.objective)); }},
        VZ_INT("dim", train.dim, "embedding dimension"),
        VZ_INT("timestamps", n_timestamps, "number of timestamps the video is split into"),
        VZ_DBL("learning_rate", train.learning_rate, "optimizer step size"),
        VZ_INT("epochs", train.epochs, "passes over the pair list"),
        VZ_INT("batch_size", train.batch_size, "pairs per gradient step"),
        Entry{{"optimizer", "sgd or adam"},
              [](RunConfig& c, const std::string& v) { c.train.optimizer = parse_optimizer(v); },
              [](const RunConfig& c) { return std::string(to_string(c.train.optimizer)); }},
        VZ_U64("seed", train.seed, "seed for initialization and shuffling"),
        VZ_U64("pair_seed", pair_seed, "seed for negative sampling"),
        VZ_INT("threads", train.threads, "worker threads for training (1 keeps the sequential order)"),
    };
    return entries;
}

#undef VZ_INT
#undef VZ_U64
#undef VZ_DBL
#undef VZ_BOOL

const Entry& find(const std::string& key) {
    for (const auto& e : table())
        if (e.info.key == key) return e;
    fail(ErrorCode::Config, "unknown configuration key '" + key + "'");
}

}  // namespace

const std::vector<RunConfig::KeyInfo>& RunConfig::keys() {
    static const std::vector<KeyInfo> out = [] {
        std::vector<KeyInfo> v;
        for (const auto& e : table()) v.push_back(e.info);
        return v;
    }();
    return out;
}

void RunConfig::set(const std::string& key, const std::string& value) { find(key).set(*this, trim(value)); }

std::string RunConfig::get(const std::string& key) const { return find(key).get(*this); }

void RunConfig::apply_text(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::Config, source + ":" + std::to_string(number) + ": expected 'key = value'");
        try {
            set(trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const Error& e) {
            fail(ErrorCode::Config, source + ":" + std::to_string(number) + ": " + e.what());
        }
    }
}

RunConfig RunConfig::from_text(const std::string& text, const std::string& source) {
    RunConfig c;
    c.apply_text(text, source);
    return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) { return from_text(read_file(path), path.string()); }

std::string RunConfig::to_text() const {
    std::string out;
    for (const auto& e : table()) out += e.info.key + " = " + e.get(*this) + "\n";
    return out;
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& e : table()) j[e.info.key] = e.get(*this);
    return j;
}

bool RunConfig::temporal_pairs() const {
    return is_temporal(train.objective) || context.mechanisms.neighbor_timestamps;
}

void RunConfig::validate() const {
    scorer.validate();
    train.validate();
    const auto& m = context.mechanisms;
    if (!m.same_frame && !m.surrounding_frames && !m.neighbor_timestamps)
        fail(ErrorCode::Config, "at least one context mechanism must be enabled");
    if (context.w_f < 0 || context.w_t < 0) fail(ErrorCode::Config, "window radii must be nonnegative");
    if (m.surrounding_frames && context.w_f < 1) fail(ErrorCode::Config, "surrounding_frames needs w_f >= 1");
    if (m.neighbor_timestamps && context.w_t < 1) fail(ErrorCode::Config, "neighbor_timestamps needs w_t >= 1");
    if (context.negatives_per_positive < 0) fail(ErrorCode::Config, "negatives must be nonnegative");
    if (n_timestamps < 1) fail(ErrorCode::Config, "timestamps must be positive");
    if (is_temporal(train.objective) && n_timestamps < 2)
        fail(ErrorCode::Config, std::string("objective ") + to_string(train.objective) + " is temporal and needs timestamps >= 2");
    if (m.neighbor_timestamps && !is_temporal(train.objective))
        fail(ErrorCode::Config, "neighbor_timestamps produces temporal pairs; choose a temporal objective");
}

}  // namespace vizobj
