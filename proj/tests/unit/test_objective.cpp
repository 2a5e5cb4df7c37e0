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
#include <random>

#include "error.hpp"
#include "objective.hpp"

using namespace vizobj;

namespace {

// Two timestamps of two frames each. a: 3 then 1, b: 1 then 0, c: 0 then 2.
Corpus freq_corpus() {
    std::vector<ObjectInstance> inst = {
        {0, 0, 0.1, 0.1}, {0, 0, 0.2, 0.2}, {0, 1, 0.3, 0.3}, {1, 1, 0.4, 0.4},
        {0, 2, 0.1, 0.1}, {2, 2, 0.5, 0.5}, {2, 3, 0.6, 0.6},
    };
    return Corpus::from_instances({"a", "b", "c"}, 4, 2, inst);
}

double oracle_norm(double f, double peak, double sf, double eps) {
    auto n = [&](double x) { return 1.0 - std::exp(-x * x / (2 * sf * sf)); };
    return (n(f) + eps) / (n(peak) + eps);
}

Embedding random_temporal(std::mt19937_64& rng, int n_obj, int n_ts, int dim) {
    std::vector<std::string> labels;
    for (int i = 0; i < n_obj; ++i) labels.push_back("o" + std::to_string(i));
    Embedding e(EmbeddingKind::Temporal, labels, n_ts, dim);
    std::normal_distribution<double> g(0.0, 1.0);
    for (double& v : e.data()) v = g(rng);
    return e;
}

}  // namespace

TEST_CASE("objective names parse") {
    for (Objective o : kAllObjectives) CHECK(parse_objective(to_string(o)) == o);
    CHECK(parse_objective("T5") == Objective::T5);
    CHECK_THROWS_AS(parse_objective("t10"), Error);
    CHECK_FALSE(is_temporal(Objective::T1S));
    CHECK_FALSE(is_diffused(Objective::T1));
    CHECK(is_diffused(Objective::T2));
}

TEST_CASE("pair terms follow hand-computed frequency weights") {
    auto c = freq_corpus();
    FrequencyNormalizer fn{1.5, 0.01};
    FrequencyTable table(fn, c);
    ScoringContext ctx{DiffusionKernel{1.0, 2}, &table};
    // At t=0: a has 3 (peak 3), b has 1 (peak 1).
    const double na = oracle_norm(3, 3, 1.5, 0.01);
    const double nb = oracle_norm(1, 1, 1.5, 0.01);
    CHECK(table(0, 0) == doctest::Approx(na));
    CHECK(table(1, 0) == doctest::Approx(nb));
    CHECK(table(0, 1) == doctest::Approx(oracle_norm(1, 3, 1.5, 0.01)));
    CHECK(table(1, 1) == doctest::Approx(oracle_norm(0, 1, 1.5, 0.01)));

    TrainingPair p{0, 1, 0, 0.4};
    CHECK(pair_terms(Objective::T2, p, ctx).target == doctest::Approx(0.4));
    auto t3 = pair_terms(Objective::T3, p, ctx);
    CHECK(t3.scale == doctest::Approx(na + nb));
    CHECK(t3.target == doctest::Approx(0.4));
    CHECK(pair_terms(Objective::T4, p, ctx).target == doctest::Approx((2 - na - nb) * 0.4));
    CHECK(pair_terms(Objective::T5, p, ctx).target == doctest::Approx((1 - (na + nb) / 2) * 0.4));
    CHECK(pair_terms(Objective::T6, p, ctx).target == doctest::Approx((1 - std::min(na, nb)) * 0.4));
    CHECK(pair_terms(Objective::T7, p, ctx).target == doctest::Approx((1 - std::min(na, nb) / 2) * 0.4));
    CHECK(pair_terms(Objective::T8, p, ctx).target == doctest::Approx(2 * std::log(1.5 / std::min(na, nb)) * 0.4));
    const double avg = (na + nb) / 2;
    const double w = avg > 0.5 ? std::log(1.5 / avg) : 2 * std::log(1.5 / avg);
    CHECK(pair_terms(Objective::T9, p, ctx).target == doctest::Approx(w * 0.4));

    // Present objects at their peak: frequency-weighted targets shrink toward zero.
    TrainingPair q{0, 2, 1, 1.0};
    const double nc1 = oracle_norm(2, 2, 1.5, 0.01);
    CHECK(nc1 == doctest::Approx(1.0));
    CHECK(pair_terms(Objective::T6, q, ctx).target == doctest::Approx(1 - std::min(table(0, 1), nc1)));

    ScoringContext bare{DiffusionKernel{1.0, 2}, nullptr};
    CHECK_THROWS_AS(pair_terms(Objective::T3, p, bare), Error);
}

TEST_CASE("residual loss on hand vectors") {
    const std::vector<double> u{1.0, 0.0}, v{0.0, 1.0};
    CHECK(residual_loss({1.0, 1.0}, u, v) == doctest::Approx(0.0));
    CHECK(residual_loss({1.0, 0.0}, u, v) == doctest::Approx(1.0));
    CHECK(residual_loss({2.0, 0.5}, u, v) == doctest::Approx(2.25));
    std::vector<double> gu(2), gv(2);
    residual_loss({1.0, 0.0}, u, u, gu, gv);
    CHECK(gu[0] == doctest::Approx(0.0));
    CHECK(gu[1] == doctest::Approx(0.0));
}

TEST_CASE("non-temporal objectives use the reference slice only") {
    Embedding e(EmbeddingKind::Temporal, {"a", "b"}, 3, 2);
    e.vec(0, 1)[0] = 1.0;
    e.vec(1, 1)[1] = 1.0;
    for (int t : {0, 2}) {
        e.vec(0, t)[0] = 1.0;
        e.vec(1, t)[0] = 1.0;
    }
    ScoringContext ctx{DiffusionKernel{1.0, 3}, nullptr};
    // Orthogonal at t=1 -> distance 1, so a target of 1 costs nothing under T1.
    CHECK(pair_loss(Objective::T1, {0, 1, 1, 1.0}, e, ctx) == doctest::Approx(0.0));
    // Under diffusion the aligned neighbours pull the distance below 1.
    CHECK(pair_loss(Objective::T2, {0, 1, 1, 1.0}, e, ctx) > 0.01);
}

TEST_CASE("compatibility checks") {
    auto st = Embedding::uniform(EmbeddingKind::Static, {"a", "b"}, 1, 3, 1);
    auto tm = Embedding::uniform(EmbeddingKind::Temporal, {"a", "b"}, 2, 3, 1);
    ScoringContext ctx{DiffusionKernel{1.0, 2}, nullptr};
    CHECK_NOTHROW(pair_loss(Objective::T1S, {0, 1, -1, 0.5}, st, ctx));
    CHECK_THROWS_AS(pair_loss(Objective::T1S, {0, 1, 0, 0.5}, st, ctx), Error);
    CHECK_THROWS_AS(pair_loss(Objective::T1S, {0, 1, -1, 0.5}, tm, ctx), Error);
    CHECK_THROWS_AS(pair_loss(Objective::T1, {0, 1, -1, 0.5}, tm, ctx), Error);
    CHECK_THROWS_AS(pair_loss(Objective::T1, {0, 1, 2, 0.5}, tm, ctx), Error);
    CHECK_THROWS_AS(pair_loss(Objective::T1, {0, 5, 0, 0.5}, tm, ctx), Error);
}

TEST_CASE("analytic gradients match central differences for every objective") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto c = freq_corpus();
    FrequencyTable table(FrequencyNormalizer{1.0, 0.01}, c);
    for (Objective obj : kAllObjectives) {
        for (int trial = 0; trial < 5; ++trial) {
            const bool temporal = is_temporal(obj);
            Embedding e = temporal ? random_temporal(rng, 3, 2, 4)
                                   : Embedding::uniform(EmbeddingKind::Static, {"a", "b", "c"}, 1, 4, trial);
            ScoringContext ctx{DiffusionKernel{0.8, 2}, &table};
            TrainingPair p{0, 2, temporal ? trial % 2 : -1, 0.2 + 0.6 * u(rng)};
            const auto grads = pair_gradient(obj, p, e, ctx);
            const double h = 1e-6;
            for (const auto& g : grads) {
                for (int i = 0; i < e.dim(); ++i) {
                    double& x = e.vec(g.label, g.t)[static_cast<std::size_t>(i)];
                    const double keep = x;
                    x = keep + h;
                    const double lp = pair_loss(obj, p, e, ctx);
                    x = keep - h;
                    const double lm = pair_loss(obj, p, e, ctx);
                    x = keep;
                    const double fd = (lp - lm) / (2 * h);
                    CHECK(g.values[static_cast<std::size_t>(i)] == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
                }
            }
            // Labels not in the pair get no gradient.
            for (const auto& g : grads) CHECK(g.label != 1);
        }
    }
}
