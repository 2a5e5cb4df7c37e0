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

#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "trainer.hpp"

using namespace vizobj;

namespace {

Corpus two_labels(int n_ts) {
    std::vector<ObjectInstance> inst;
    for (int f = 0; f < 2 * n_ts; ++f) {
        inst.push_back({0, f, 0.2, 0.5});
        inst.push_back({1, f, 0.6, 0.5});
    }
    return Corpus::from_instances({"a", "b"}, 2 * n_ts, n_ts, inst);
}

}  // namespace

TEST_CASE("a single static pair converges to its target distance") {
    auto c = two_labels(1);
    std::vector<TrainingPair> pairs{{0, 1, -1, 0.7}};
    TrainConfig cfg;
    cfg.dim = 4;
    cfg.epochs = 400;
    cfg.learning_rate = 0.5;
    cfg.batch_size = 1;
    auto r = train(pairs, cfg, c);
    CHECK(r.loss_trace.size() == 401);
    CHECK(r.loss_trace.back() < 1e-8);
    CHECK(cosine_distance(r.embedding.vec(0), r.embedding.vec(1)) == doctest::Approx(0.7).epsilon(1e-3));
}

TEST_CASE("zero epochs return the seeded initial table") {
    auto c = two_labels(1);
    std::vector<TrainingPair> pairs{{0, 1, -1, 0.7}};
    TrainConfig cfg;
    cfg.dim = 3;
    cfg.epochs = 0;
    cfg.seed = 5;
    auto r = train(pairs, cfg, c);
    CHECK(r.loss_trace.size() == 1);
    CHECK(r.embedding == Embedding::uniform(EmbeddingKind::Static, {"a", "b"}, 1, 3, 5));
    ScoringContext ctx{DiffusionKernel{1.0, 1}, nullptr};
    CHECK(r.loss_trace[0] == doctest::Approx(mean_loss(Objective::T1S, pairs, r.embedding, ctx)));
}

TEST_CASE("training is deterministic and loss falls for each optimizer") {
    auto c = two_labels(3);
    std::vector<TrainingPair> pairs;
    for (int t = 0; t < 3; ++t) {
        pairs.push_back({0, 1, t, 0.1 + 0.3 * t});
        pairs.push_back({1, 0, t, 0.1 + 0.3 * t});
    }
    for (Optimizer opt : {Optimizer::Sgd, Optimizer::Adam}) {
        for (Objective obj : {Objective::T1, Objective::T2, Objective::T5, Objective::T9}) {
            TrainConfig cfg;
            cfg.objective = obj;
            cfg.dim = 6;
            cfg.epochs = 60;
            cfg.batch_size = 2;
            cfg.optimizer = opt;
            cfg.learning_rate = opt == Optimizer::Adam ? 0.05 : 0.3;
            cfg.seed = 3;
            auto a = train(pairs, cfg, c);
            auto b = train(pairs, cfg, c);
            CHECK(a.embedding == b.embedding);
            CHECK(a.loss_trace == b.loss_trace);
            CHECK(a.loss_trace.back() < a.loss_trace.front());
        }
    }
}

TEST_CASE("training validates its inputs") {
    auto c = two_labels(2);
    TrainConfig cfg;
    cfg.dim = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.learning_rate = -1;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.batch_size = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.objective = Objective::T2;
    std::vector<TrainingPair> static_pairs{{0, 1, -1, 0.5}};
    CHECK_THROWS_AS(train(static_pairs, cfg, c), Error);
    CHECK(parse_optimizer("adam") == Optimizer::Adam);
    CHECK_THROWS_AS(parse_optimizer("rmsprop"), Error);
}

TEST_CASE("a huge learning rate is reported as divergence") {
    auto c = two_labels(1);
    std::vector<TrainingPair> pairs{{0, 1, -1, 0.7}, {1, 0, -1, 0.2}};
    TrainConfig cfg;
    cfg.learning_rate = 1e308;
    cfg.epochs = 20;
    cfg.batch_size = 1;
    bool diverged = false;
    try {
        train(pairs, cfg, c);
    } catch (const Error& e) {
        diverged = e.code() == ErrorCode::Training;
    }
    CHECK(diverged);
}
