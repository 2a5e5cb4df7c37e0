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

#include "context.hpp"
#include "scoring.hpp"
#include "trainer.hpp"

namespace vizobj {

/// Every tunable of the pipeline, addressable by flat key.
struct RunConfig {
    ContextConfig context;
    DiscrepancyScorer scorer;
    TrainConfig train;
    int n_timestamps = 1;
    /// Seed for negative sampling (training uses train.seed).
    std::uint64_t pair_seed = 0;

    struct KeyInfo {
        std::string key;
        std::string help;
    };
    static const std::vector<KeyInfo>& keys();

    /// Throws a configuration error for unknown keys or unparsable values.
    void set(const std::string& key, const std::string& value);
    std::string get(const std::string& key) const;

    /// Applies `key = value` lines; '#' starts a comment.
    void apply_text(const std::string& text, const std::string& source = "<config>");
    static RunConfig from_text(const std::string& text, const std::string& source = "<config>");
    static RunConfig load(const std::filesystem::path& path);

    /// All keys in table order, one `key = value` per line; round-trips through from_text.
    std::string to_text() const;
    nlohmann::json to_json() const;

    /// Cross-field checks that do not need a corpus.
    void validate() const;
    /// Pairs carry a timestamp whenever the objective or a mechanism needs one.
    bool temporal_pairs() const;
};

}  // namespace vizobj
