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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "embedding.hpp"

namespace vizobj {

struct Neighbor {
    LabelId label = 0;
    /// Cosine similarity for embedding neighbors, mean spatial distance for base neighbors.
    double value = 0.0;
};

struct NeighborList {
    LabelId query = 0;
    int t = -1;
    std::vector<Neighbor> neighbors;
};

/// Top-k labels by cosine similarity to `query` (slice t of a temporal table).
/// Ties go to the smaller label id; k is clamped to |O| - 1.
NeighborList nearest_neighbors(const Embedding& emb, LabelId query, std::optional<int> t, int k);

/// Labels that share a frame with `query` inside timestamp t, ranked by
/// ascending mean distance to the query's instances.
NeighborList base_neighbors(const Corpus& corpus, LabelId query, int t, int k);

/// Every (label, timestamp) where the label occurs.
std::vector<std::pair<LabelId, int>> default_hit_sample(const Corpus& corpus);

/// Mean over the sample of |base top-k intersect embedding top-k| / k.
double hit_at_k(const Embedding& emb, const Corpus& corpus, int k, const std::vector<std::pair<LabelId, int>>& sample);

struct ClusterResult {
    std::vector<int> assignment;
    double silhouette = 0.0;
};

/// Spherical k-means (cosine distance, k-means++ seeding, 10 restarts) on a
/// static table, plus the mean silhouette coefficient under the same metric.
ClusterResult kmeans_silhouette(const Embedding& emb, int k, std::uint64_t seed);

/// Mean silhouette for a given assignment under cosine distance; singletons score 0.
double silhouette(const Embedding& emb, const std::vector<int>& assignment, int t = 0);

double rand_index(const std::vector<int>& a, const std::vector<int>& b);

/// Mean fraction of each label's top-k neighbors sharing its category.
/// `categories` is indexed by label id and must cover every label.
double clustering_consistency(const Embedding& emb, const std::vector<int>& categories, int k,
                              std::optional<int> t = std::nullopt);

/// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

/// Cosine similarity of e_a^t and e_b^t for every timestamp.
std::vector<double> similarity_series(const Embedding& emb, LabelId a, LabelId b);

struct SimilarPair {
    LabelId a = 0;
    LabelId b = 0;
    double similarity = 0.0;
};

/// The m most similar unordered label pairs at slice t (a < b, ties by (a, b)).
std::vector<SimilarPair> top_pairs(const Embedding& emb, int t, int m);

extern const char* const kNarrativeHeader;

/// Header line followed by "Time t: (a, b), ..." for every timestamp.
std::string narrative_prompt(const Embedding& emb, int m_per_t);

/// Mean-centred projection onto the top two principal axes. Each axis is
/// signed so its largest-magnitude coordinate is positive.
std::vector<std::array<double, 2>> pca_2d(const Embedding& emb, std::optional<int> t = std::nullopt);

struct ClassifyResult {
    double accuracy = 0.0;
    int n_train = 0;
    int n_test = 0;
};

/// Nearest-centroid (cosine) classifier over the concatenation of each
/// label's slices. `classes` is indexed by label id; negative entries are skipped.
ClassifyResult classify_contexts(const Embedding& emb, const std::vector<int>& classes, std::uint64_t split_seed,
                                 double train_fraction);

/// Mean accuracy of classify_contexts over `n_permutations` random relabelings.
double permutation_baseline(const Embedding& emb, const std::vector<int>& classes, std::uint64_t split_seed,
                            double train_fraction, int n_permutations, std::uint64_t permutation_seed);

}  // namespace vizobj
