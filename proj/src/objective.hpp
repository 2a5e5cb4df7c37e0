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

#include <span>
#include <string>
#include <vector>

#include "context.hpp"
#include "embedding.hpp"
#include "scoring.hpp"

namespace vizobj {

/// Objective ids. T1S trains a static table; T1 matches slices at the
/// reference timestamp; T2..T9 compare temporally diffused vectors and
/// differ in how object frequency reshapes the target.
enum class Objective { T1S, T1, T2, T3, T4, T5, T6, T7, T8, T9 };

inline constexpr Objective kAllObjectives[] = {Objective::T1S, Objective::T1, Objective::T2, Objective::T3,
                                               Objective::T4,  Objective::T5, Objective::T6, Objective::T7,
                                               Objective::T8,  Objective::T9};

const char* to_string(Objective objective);
Objective parse_objective(const std::string& text);
bool is_temporal(Objective objective);
bool is_diffused(Objective objective);

/// Everything besides the embedding that a per-pair loss reads.
struct ScoringContext {
    DiffusionKernel kernel;
    /// Normalized frequencies; required by T3..T9.
    const FrequencyTable* frequencies = nullptr;
};

/// Per-pair residual is scale * dist(u, v) - target.
struct PairTerms {
    double scale = 1.0;
    double target = 0.0;
};

PairTerms pair_terms(Objective objective, const TrainingPair& pair, const ScoringContext& ctx);

/// Squared residual for the given effective vectors; writes dLoss/du and
/// dLoss/dv when the output spans are non-empty.
double residual_loss(const PairTerms& terms, std::span<const double> u, std::span<const double> v,
                     std::span<double> grad_u = {}, std::span<double> grad_v = {});

/// Throws a configuration error when the pair's family (static vs temporal)
/// or the embedding kind does not fit the objective.
void check_compatible(Objective objective, const TrainingPair& pair, const Embedding& emb);

double pair_loss(Objective objective, const TrainingPair& pair, const Embedding& emb, const ScoringContext& ctx);

/// Sum of pair_loss over `pairs`.
double total_loss(Objective objective, const std::vector<TrainingPair>& pairs, const Embedding& emb,
                  const ScoringContext& ctx);

struct GradientEntry {
    LabelId label = 0;
    int t = 0;
    std::vector<double> values;
};

/// Exact partial derivatives of pair_loss with respect to every embedding
/// slice the pair touches; one entry per (label, timestamp).
std::vector<GradientEntry> pair_gradient(Objective objective, const TrainingPair& pair, const Embedding& emb,
                                         const ScoringContext& ctx);

}  // namespace vizobj
