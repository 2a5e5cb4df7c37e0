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
#include <vector>

#include "context.hpp"
#include "corpus.hpp"
#include "embedding.hpp"
#include "objective.hpp"

namespace vizobj {

enum class Optimizer { Sgd, Adam };

const char* to_string(Optimizer optimizer);
Optimizer parse_optimizer(const std::string& text);

struct TrainConfig {
    Objective objective = Objective::T1S;
    int dim = 32;
    double learning_rate = 0.05;
    int epochs = 50;
    int batch_size = 256;
    std::uint64_t seed = 0;
    double sigma_t = 1.0;
    /// Frequency decay width; <= 0 selects half the busiest per-timestamp count.
    double sigma_f = 0.0;
    double epsilon = 0.01;
    Optimizer optimizer = Optimizer::Sgd;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_epsilon = 1e-8;
    /// Worker threads per minibatch. Results are reproducible for a fixed count;
    /// only 1 matches the sequential summation order.
    int threads = 1;

    void validate() const;
};

struct TrainResult {
    Embedding embedding;
    /// Mean per-pair loss: entry 0 at initialization, entry e after epoch e.
    std::vector<double> loss_trace;
};

/// Minibatch gradient descent on the configured objective, starting from a
/// table seeded uniformly in [0,1). Gradients are averaged over each batch.
TrainResult train(const std::vector<TrainingPair>& pairs, const TrainConfig& config, const Corpus& corpus);

/// Mean of pair_loss over `pairs` (0 for an empty list).
double mean_loss(Objective objective, const std::vector<TrainingPair>& pairs, const Embedding& emb,
                 const ScoringContext& ctx);

}  // namespace vizobj
