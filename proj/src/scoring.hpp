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

#include <vector>

#include "corpus.hpp"

namespace vizobj {

/// Euclidean distance between two normalized centers, in [0, sqrt(2)].
double spatial_distance(const ObjectInstance& a, const ObjectInstance& b);

/// 0 when d < d_theta, 1 otherwise.
double score_threshold(double d, double d_theta);
/// d / sqrt(2); throws a domain error for d beyond the unit-square diagonal.
double score_minmax(double d);
/// 1 - exp(-d^2 / (2 sigma^2)): the Gaussian decay divided by its peak, inverted.
double score_gaussian(double d, double sigma_d);

enum class ScoreMethod { Threshold, MinMax, GaussianDecay };

const char* to_string(ScoreMethod method);
ScoreMethod parse_score_method(const std::string& text);

/// Maps the spatial distance of a reference/context instance pair to a
/// discrepancy score in [0,1] (0 = strongly co-contextual).
struct DiscrepancyScorer {
    ScoreMethod method = ScoreMethod::GaussianDecay;
    double d_theta = 0.3;
    double sigma_d = 0.25;

    void validate() const;
    double score(double d) const;
    double operator()(const ObjectInstance& ref, const ObjectInstance& ctx) const {
        return score(spatial_distance(ref, ctx));
    }
};

/// Gaussian density (1/sqrt(2 pi sigma^2)) exp(-offset^2 / (2 sigma^2)).
double gaussian_density(double offset, double sigma);

/// Unnormalized Gaussian weights over timestamps (or frames) centred on a reference index.
struct DiffusionKernel {
    double sigma_t = 1.0;
    int n_timestamps = 1;

    void validate() const;
    /// gamma(t_r, t_c): raw density at offset t_c - t_r. Peaks at t_c == t_r.
    double weight(int t_r, int t_c) const;
    /// gamma(t_r, t) for every t in [0, n_timestamps).
    std::vector<double> weights(int t_r) const;
};

double temporal_weight(const DiffusionKernel& kernel, int t_r, int t_c);

/// Maps per-timestamp object counts into (0,1], equal to 1 at each object's
/// busiest timestamp.
struct FrequencyNormalizer {
    double sigma_f = 1.0;
    double epsilon = 0.01;

    void validate() const;
    /// 1 - exp(-f^2 / (2 sigma_f^2)); increasing in f, 0 at f = 0.
    double transform(double f) const;
};

/// Half the largest per-timestamp label count (at least 0.5).
double default_sigma_f(const Corpus& corpus);

double freq_norm(const FrequencyNormalizer& normalizer, const Corpus& corpus, LabelId label, int t);

/// freq_norm evaluated once for every (label, timestamp).
class FrequencyTable {
public:
    FrequencyTable() = default;
    FrequencyTable(const FrequencyNormalizer& normalizer, const Corpus& corpus);

    double operator()(LabelId label, int t) const;
    int n_labels() const noexcept { return n_labels_; }
    int n_timestamps() const noexcept { return n_timestamps_; }

private:
    int n_labels_ = 0;
    int n_timestamps_ = 0;
    std::vector<double> values_;
};

double phi_avg(double nr, double nc);
double phi_min(double nr, double nc);

/// Log-based frequency weight: ln(1.5/phi) above 0.5, doubled at or below it.
double omega_ln(double phi_avg);

}  // namespace vizobj
