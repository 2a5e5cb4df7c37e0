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
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpus.hpp"
#include "scoring.hpp"

namespace vizobj {

enum class EmbeddingKind { Static, Temporal };

/// Dense embedding table: |O| x |e| (static) or |O| x |T| x |e| (temporal),
/// stored row-major with the timestamp axis in the middle. A static table is
/// treated as having a single timestamp.
class Embedding {
public:
    Embedding() = default;
    Embedding(EmbeddingKind kind, std::vector<std::string> labels, int n_timestamps, int dim);

    /// Entries drawn uniformly from [0,1) with a 64-bit Mersenne Twister.
    static Embedding uniform(EmbeddingKind kind, std::vector<std::string> labels, int n_timestamps, int dim,
                             std::uint64_t seed);

    EmbeddingKind kind() const noexcept { return kind_; }
    bool temporal() const noexcept { return kind_ == EmbeddingKind::Temporal; }
    int n_objects() const noexcept { return static_cast<int>(labels_.size()); }
    int n_timestamps() const noexcept { return n_timestamps_; }
    int dim() const noexcept { return dim_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    LabelId label_id(std::string_view name) const;

    std::span<double> vec(LabelId label, int t = 0);
    std::span<const double> vec(LabelId label, int t = 0) const;
    /// Bounds-checked variant of vec() for user-facing queries.
    std::span<const double> at(LabelId label, int t = 0) const;

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    /// Free-form provenance carried into the file header (objective, seed, config echo, loss trace).
    nlohmann::json& metadata() noexcept { return metadata_; }
    const nlohmann::json& metadata() const noexcept { return metadata_; }

    /// Writes `path` (JSON header) and `path` + ".bin" (little-endian float64 payload).
    void save(const std::filesystem::path& path) const;
    static Embedding load(const std::filesystem::path& path);

    friend bool operator==(const Embedding& a, const Embedding& b) {
        return a.kind_ == b.kind_ && a.labels_ == b.labels_ && a.n_timestamps_ == b.n_timestamps_ &&
               a.dim_ == b.dim_ && a.data_ == b.data_;
    }

private:
    std::size_t offset(LabelId label, int t) const {
        return (static_cast<std::size_t>(label) * static_cast<std::size_t>(n_timestamps_) + static_cast<std::size_t>(t)) *
               static_cast<std::size_t>(dim_);
    }

    EmbeddingKind kind_ = EmbeddingKind::Static;
    std::vector<std::string> labels_;
    int n_timestamps_ = 1;
    int dim_ = 0;
    std::vector<double> data_;
    nlohmann::json metadata_ = nlohmann::json::object();
};

double dot(std::span<const double> x, std::span<const double> y);
double norm(std::span<const double> x);

/// 1 - cos(x, y). Throws a degenerate-vector error for a zero vector and
/// an invalid-argument error for mismatched lengths.
double cosine_distance(std::span<const double> x, std::span<const double> y);
double cosine_similarity(std::span<const double> x, std::span<const double> y);

/// Kernel-weighted sum of one object's vectors over all timestamps, centred at t_r.
std::vector<double> diffused_vector(const Embedding& emb, LabelId label, int t_r, const DiffusionKernel& kernel);

}  // namespace vizobj
