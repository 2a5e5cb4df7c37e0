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
#include <vector>

#include "corpus.hpp"
#include "scoring.hpp"

namespace vizobj {

enum class PairKind : std::uint8_t { Positive, Negative };

/// One training row: the target cosine distance `delta` between the
/// reference and context embeddings (at `t_ref` for temporal data).
struct TrainingPair {
    LabelId ref = 0;
    LabelId ctx = 0;
    int t_ref = -1;  ///< -1 for static training data
    double delta = 0.0;
    PairKind kind = PairKind::Positive;
    /// Frame the reference instance came from; -1 when unknown (e.g. loaded
    /// from a pair file). Used only to build the negative-sampling window.
    int ref_frame = -1;

    bool temporal() const noexcept { return t_ref >= 0; }
};

/// Which context windows contribute positive pairs.
struct Mechanisms {
    bool same_frame = true;
    bool surrounding_frames = false;
    bool neighbor_timestamps = false;
};

struct ContextConfig {
    Mechanisms mechanisms;
    int w_f = 1;
    int w_t = 1;
    int negatives_per_positive = 0;
    bool frame_diffusion = true;
    /// Width of the Gaussian applied across frames and timestamps.
    double sigma_t = 1.0;
    /// Attach the reference timestamp to every pair (temporal training data).
    bool temporal = false;

    void validate(const Corpus& corpus) const;
};

/// Every ordered pair of distinct-label instances sharing a frame.
std::vector<TrainingPair> pairs_same_frame(const Corpus& corpus, const DiscrepancyScorer& scorer,
                                           bool temporal = false);

/// Instances in frames r-w_f..r+w_f (clamped, excluding r) whose label is
/// absent from frame r. With `frame_diffusion`, scores are multiplied by
/// 1 - gamma(r, r', sigma_t) at frame granularity.
std::vector<TrainingPair> pairs_surrounding_frames(const Corpus& corpus, int w_f, const DiscrepancyScorer& scorer,
                                                   bool frame_diffusion = true, double sigma_t = 1.0,
                                                   bool temporal = false);

/// Instances in timestamps t_r-w_t..t_r+w_t (clamped, excluding t_r) whose
/// label is absent from all of t_r. Scores are damped by 1 - gamma(t_r, t_c, sigma_t)
/// and clamped to [0,1]. Always temporal.
std::vector<TrainingPair> pairs_neighbor_timestamps(const Corpus& corpus, int w_t, const DiscrepancyScorer& scorer,
                                                    double sigma_t = 1.0);

/// Selection probabilities over labels for one reference window: proportional to
/// each label's frequency outside the reference timestamp, zero for `excluded`
/// labels. Returns all zeros when nothing is eligible.
std::vector<double> negative_weights(const Corpus& corpus, int t_ref, const std::vector<LabelId>& excluded);

/// Appends `n_neg` frequency-weighted negatives (delta = 1) after each positive.
/// Deterministic for a fixed seed. Output keeps each positive followed by its negatives.
std::vector<TrainingPair> negative_samples(const Corpus& corpus, const std::vector<TrainingPair>& positives,
                                           int n_neg, std::uint64_t rng_seed, int w_f = 0);

/// Runs the configured mechanisms in order (same-frame, surrounding, neighbor
/// timestamps) and then negative sampling.
std::vector<TrainingPair> generate_pairs(const Corpus& corpus, const ContextConfig& config,
                                         const DiscrepancyScorer& scorer, std::uint64_t rng_seed);

/// CSV with header `ref,ctx,t_ref,delta,kind`; labels written by name.
void write_pairs_csv(std::ostream& out, const std::vector<TrainingPair>& pairs, const Corpus& corpus);
void save_pairs(const std::filesystem::path& path, const std::vector<TrainingPair>& pairs, const Corpus& corpus);
std::vector<TrainingPair> read_pairs_csv(std::istream& in, const Corpus& corpus);
std::vector<TrainingPair> load_pairs(const std::filesystem::path& path, const Corpus& corpus);

}  // namespace vizobj
