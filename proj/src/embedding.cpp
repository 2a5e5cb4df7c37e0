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

#include "embedding.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <random>

#include "error.hpp"
#include "io.hpp"

namespace vizobj {

using nlohmann::json;

Embedding::Embedding(EmbeddingKind kind, std::vector<std::string> labels, int n_timestamps, int dim)
    : kind_(kind), labels_(std::move(labels)), n_timestamps_(n_timestamps), dim_(dim) {
    if (labels_.empty()) fail(ErrorCode::InvalidArgument, "embedding needs at least one object");
    if (dim_ < 1) fail(ErrorCode::Config, "embedding dimension must be positive");
    if (n_timestamps_ < 1) fail(ErrorCode::Config, "embedding needs at least one timestamp");
    if (kind_ == EmbeddingKind::Static && n_timestamps_ != 1)
        fail(ErrorCode::InvalidArgument, "static embeddings have a single slice");
    data_.assign(static_cast<std::size_t>(n_objects()) * static_cast<std::size_t>(n_timestamps_) *
                     static_cast<std::size_t>(dim_),
                 0.0);
}

Embedding Embedding::uniform(EmbeddingKind kind, std::vector<std::string> labels, int n_timestamps, int dim,
                             std::uint64_t seed) {
    Embedding emb(kind, std::move(labels), n_timestamps, dim);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& v : emb.data_) v = unit(rng);
    return emb;
}

LabelId Embedding::label_id(std::string_view name) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == name) return static_cast<LabelId>(i);
    fail(ErrorCode::Index, "unknown label \"" + std::string(name) + "\"");
}

std::span<double> Embedding::vec(LabelId label, int t) {
    return {data_.data() + offset(label, t), static_cast<std::size_t>(dim_)};
}

std::span<const double> Embedding::vec(LabelId label, int t) const {
    return {data_.data() + offset(label, t), static_cast<std::size_t>(dim_)};
}

std::span<const double> Embedding::at(LabelId label, int t) const {
    if (label < 0 || label >= n_objects()) fail(ErrorCode::Index, "label id " + std::to_string(label) + " out of range");
    if (t < 0 || t >= n_timestamps_) fail(ErrorCode::Index, "timestamp " + std::to_string(t) + " out of range");
    return vec(label, t);
}

void Embedding::save(const std::filesystem::path& path) const {
    static_assert(sizeof(double) == 8);
    std::string payload(data_.size() * 8, '\0');
    for (std::size_t i = 0; i < data_.size(); ++i) {
        auto bits = std::bit_cast<std::uint64_t>(data_[i]);
        for (int b = 0; b < 8; ++b) payload[i * 8 + static_cast<std::size_t>(b)] = static_cast<char>((bits >> (8 * b)) & 0xFF);
    }
    std::filesystem::path bin = path;
    bin += ".bin";
    write_file_atomic(bin, payload);

    json header = metadata_;
    header["format"] = "vizobj-embedding";
    header["version"] = 1;
    header["kind"] = temporal() ? "temporal" : "static";
    header["n_objects"] = n_objects();
    header["n_timestamps"] = n_timestamps_;
    header["dim"] = dim_;
    header["labels"] = labels_;
    header["data"] = {{"file", bin.filename().string()}, {"encoding", "float64-le"}, {"count", data_.size()}};
    write_file_atomic(path, header.dump(2) + "\n");
}

Embedding Embedding::load(const std::filesystem::path& path) {
    json header = json::parse(read_file(path), nullptr, false);
    if (header.is_discarded() || !header.is_object()) fail(ErrorCode::Parse, path.string() + ": invalid JSON header");
    try {
        if (header.value("format", "") != "vizobj-embedding") fail(ErrorCode::Parse, path.string() + ": not an embedding file");
        const std::string kind = header.at("kind").get<std::string>();
        if (kind != "static" && kind != "temporal") fail(ErrorCode::Parse, "embedding kind must be static or temporal");
        Embedding emb(kind == "temporal" ? EmbeddingKind::Temporal : EmbeddingKind::Static,
                      header.at("labels").get<std::vector<std::string>>(), header.at("n_timestamps").get<int>(),
                      header.at("dim").get<int>());
        if (header.at("n_objects").get<int>() != emb.n_objects())
            fail(ErrorCode::Parse, "embedding header: n_objects does not match label table");
        const auto& data = header.at("data");
        if (data.value("encoding", "") != "float64-le") fail(ErrorCode::Parse, "unsupported embedding encoding");
        if (data.at("count").get<std::size_t>() != emb.data_.size())
            fail(ErrorCode::Parse, "embedding header: value count does not match dimensions");
        const std::string payload = read_file(path.parent_path() / data.at("file").get<std::string>());
        if (payload.size() != emb.data_.size() * 8)
            fail(ErrorCode::Parse, "embedding payload has " + std::to_string(payload.size()) + " bytes, expected " +
                                       std::to_string(emb.data_.size() * 8));
        for (std::size_t i = 0; i < emb.data_.size(); ++i) {
            std::uint64_t bits = 0;
            for (int b = 0; b < 8; ++b)
                bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(payload[i * 8 + static_cast<std::size_t>(b)]))
                        << (8 * b);
            emb.data_[i] = std::bit_cast<double>(bits);
            if (!std::isfinite(emb.data_[i])) fail(ErrorCode::Parse, "embedding payload holds a non-finite value");
        }
        for (const char* key : {"format", "version", "kind", "n_objects", "n_timestamps", "dim", "labels", "data"})
            header.erase(key);
        emb.metadata_ = std::move(header);
        return emb;
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, path.string() + ": " + e.what());
    }
}

double dot(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double cosine_similarity(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) fail(ErrorCode::InvalidArgument, "cosine needs equal, nonzero lengths");
    const double nx = norm(x);
    const double ny = norm(y);
    if (nx == 0.0 || ny == 0.0) fail(ErrorCode::Degenerate, "cosine of a zero vector is undefined");
    return dot(x, y) / (nx * ny);
}

double cosine_distance(std::span<const double> x, std::span<const double> y) {
    return 1.0 - cosine_similarity(x, y);
}

std::vector<double> diffused_vector(const Embedding& emb, LabelId label, int t_r, const DiffusionKernel& kernel) {
    if (t_r < 0 || t_r >= emb.n_timestamps()) fail(ErrorCode::Index, "timestamp out of range");
    std::vector<double> out(static_cast<std::size_t>(emb.dim()), 0.0);
    for (int t = 0; t < emb.n_timestamps(); ++t) {
        const double w = kernel.weight(t_r, t);
        const auto v = emb.at(label, t);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * v[i];
    }
    return out;
}

}  // namespace vizobj
