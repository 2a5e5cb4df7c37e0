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

#include "scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"
#include "log.hpp"

namespace vizobj {

namespace {
// Slack for rounding in sqrt when both centers sit on opposite corners.
constexpr double kDiagonalSlack = 1e-12;
}  // namespace

double spatial_distance(const ObjectInstance& a, const ObjectInstance& b) {
    return std::hypot(a.cx - b.cx, a.cy - b.cy);
}

double score_threshold(double d, double d_theta) {
    return d < d_theta ? 0.0 : 1.0;
}

double score_minmax(double d) {
    if (d < 0.0 || d > std::numbers::sqrt2 + kDiagonalSlack)
        fail(ErrorCode::Domain, "min-max score needs 0 <= d <= sqrt(2), got " + std::to_string(d));
    return std::min(1.0, d / std::numbers::sqrt2);
}

double score_gaussian(double d, double sigma_d) {
    return 1.0 - std::exp(-(d * d) / (2.0 * sigma_d * sigma_d));
}

const char* to_string(ScoreMethod method) {
    switch (method) {
        case ScoreMethod::Threshold: return "threshold";
        case ScoreMethod::MinMax: return "minmax";
        case ScoreMethod::GaussianDecay: return "gaussian";
    }
    return "?";
}

ScoreMethod parse_score_method(const std::string& text) {
    if (text == "threshold") return ScoreMethod::Threshold;
    if (text == "minmax" || text == "min-max") return ScoreMethod::MinMax;
    if (text == "gaussian" || text == "gaussian-decay") return ScoreMethod::GaussianDecay;
    fail(ErrorCode::Config, "unknown scorer '" + text + "' (expected threshold, minmax or gaussian)");
}

void DiscrepancyScorer::validate() const {
    if (!(d_theta > 0.0)) fail(ErrorCode::Config, "d_theta must be positive");
    if (!(sigma_d > 0.0)) fail(ErrorCode::Config, "sigma_d must be positive");
}

double DiscrepancyScorer::score(double d) const {
    switch (method) {
        case ScoreMethod::Threshold: return score_threshold(d, d_theta);
        case ScoreMethod::MinMax: return score_minmax(d);
        case ScoreMethod::GaussianDecay: return score_gaussian(d, sigma_d);
    }
    return 1.0;
}

double gaussian_density(double offset, double sigma) {
    return std::exp(-(offset * offset) / (2.0 * sigma * sigma)) / std::sqrt(2.0 * std::numbers::pi * sigma * sigma);
}

void DiffusionKernel::validate() const {
    if (!(sigma_t > 0.0)) fail(ErrorCode::Config, "sigma_t must be positive");
    if (n_timestamps < 1) fail(ErrorCode::Config, "diffusion kernel needs at least one timestamp");
    if (sigma_t < 0.4)
        log_warning("sigma_t < 0.4 makes the peak diffusion weight exceed 1; temporal scores will be clamped");
}

double DiffusionKernel::weight(int t_r, int t_c) const {
    return gaussian_density(static_cast<double>(t_c - t_r), sigma_t);
}

std::vector<double> DiffusionKernel::weights(int t_r) const {
    std::vector<double> w(static_cast<std::size_t>(n_timestamps));
    for (int t = 0; t < n_timestamps; ++t) w[static_cast<std::size_t>(t)] = weight(t_r, t);
    return w;
}

double temporal_weight(const DiffusionKernel& kernel, int t_r, int t_c) {
    if (t_r < 0 || t_r >= kernel.n_timestamps || t_c < 0 || t_c >= kernel.n_timestamps)
        fail(ErrorCode::Index, "timestamp out of range for diffusion kernel");
    return kernel.weight(t_r, t_c);
}

void FrequencyNormalizer::validate() const {
    if (!(sigma_f > 0.0)) fail(ErrorCode::Config, "sigma_f must be positive");
    if (!(epsilon > 0.0)) fail(ErrorCode::Config, "epsilon must be positive");
}

double FrequencyNormalizer::transform(double f) const {
    return 1.0 - std::exp(-(f * f) / (2.0 * sigma_f * sigma_f));
}

double default_sigma_f(const Corpus& corpus) {
    return std::max(0.5, 0.5 * static_cast<double>(corpus.max_frequency()));
}

double freq_norm(const FrequencyNormalizer& normalizer, const Corpus& corpus, LabelId label, int t) {
    const double here = normalizer.transform(corpus.frequency(label, t));
    double peak = 0.0;
    for (int tau = 0; tau < corpus.n_timestamps(); ++tau)
        peak = std::max(peak, normalizer.transform(corpus.frequency(label, tau)));
    if (corpus.total_frequency(label) == 0)
        fail(ErrorCode::Degenerate, "label \"" + corpus.label_name(label) + "\" never appears");
    return (here + normalizer.epsilon) / (peak + normalizer.epsilon);
}

FrequencyTable::FrequencyTable(const FrequencyNormalizer& normalizer, const Corpus& corpus)
    : n_labels_(corpus.n_labels()), n_timestamps_(corpus.n_timestamps()) {
    normalizer.validate();
    values_.resize(static_cast<std::size_t>(n_labels_) * static_cast<std::size_t>(n_timestamps_));
    for (LabelId k = 0; k < n_labels_; ++k)
        for (int t = 0; t < n_timestamps_; ++t)
            values_[static_cast<std::size_t>(k) * static_cast<std::size_t>(n_timestamps_) + static_cast<std::size_t>(t)] =
                freq_norm(normalizer, corpus, k, t);
}

double FrequencyTable::operator()(LabelId label, int t) const {
    if (label < 0 || label >= n_labels_ || t < 0 || t >= n_timestamps_)
        fail(ErrorCode::Index, "frequency table lookup out of range");
    return values_[static_cast<std::size_t>(label) * static_cast<std::size_t>(n_timestamps_) + static_cast<std::size_t>(t)];
}

double phi_avg(double nr, double nc) { return 0.5 * (nr + nc); }
double phi_min(double nr, double nc) { return std::min(nr, nc); }

double omega_ln(double phi) {
    if (!(phi > 0.0)) fail(ErrorCode::Domain, "omega_ln needs a positive average frequency");
    const double base = std::log(1.5 / phi);
    return phi > 0.5 ? base : 2.0 * base;
}

}  // namespace vizobj
