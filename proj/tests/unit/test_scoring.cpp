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

#include "corpus.hpp"
#include "error.hpp"
#include "scoring.hpp"

using namespace vizobj;

namespace {

ObjectInstance at(double x, double y) { return {0, 0, x, y}; }

}  // namespace

TEST_CASE("spatial distance between normalized centers") {
    CHECK(spatial_distance(at(0, 0), at(1, 1)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(spatial_distance(at(0.2, 0.3), at(0.2, 0.3)) == 0.0);
    CHECK(spatial_distance(at(0.1, 0.1), at(0.4, 0.5)) == doctest::Approx(0.5));
}

TEST_CASE("threshold score") {
    CHECK(score_threshold(0.1, 0.3) == 0.0);
    CHECK(score_threshold(0.3, 0.3) == 1.0);
    CHECK(score_threshold(0.9, 0.3) == 1.0);
}

TEST_CASE("minmax score") {
    CHECK(score_minmax(0.0) == 0.0);
    CHECK(score_minmax(std::sqrt(2.0)) == doctest::Approx(1.0));
    CHECK(score_minmax(0.5) == doctest::Approx(0.5 / std::sqrt(2.0)));
    CHECK_THROWS_AS(score_minmax(1.5), Error);
    try {
        score_minmax(2.0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Domain);
    }
}

TEST_CASE("gaussian score") {
    CHECK(score_gaussian(0.0, 0.25) == 0.0);
    CHECK(score_gaussian(0.25, 0.25) == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-12));
    CHECK(score_gaussian(0.25, 0.25) == doctest::Approx(0.39347).epsilon(1e-4));
    CHECK(score_gaussian(1.0, 0.25) == doctest::Approx(0.99966).epsilon(1e-4));
    // Joint rescaling of d and sigma leaves the score unchanged.
    CHECK(score_gaussian(0.3, 0.2) == doctest::Approx(score_gaussian(0.6, 0.4)));
}

TEST_CASE("scores are monotone in distance and stay in [0,1]") {
    for (auto method : {ScoreMethod::Threshold, ScoreMethod::MinMax, ScoreMethod::GaussianDecay}) {
        DiscrepancyScorer s{method, 0.3, 0.25};
        double prev = -1.0;
        for (int i = 0; i <= 140; ++i) {
            const double d = i * 0.01;
            const double v = s.score(d);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("scorer names round-trip and bad parameters are rejected") {
    for (auto method : {ScoreMethod::Threshold, ScoreMethod::MinMax, ScoreMethod::GaussianDecay})
        CHECK(parse_score_method(to_string(method)) == method);
    CHECK_THROWS_AS(parse_score_method("cubic"), Error);
    CHECK_THROWS_AS((DiscrepancyScorer{ScoreMethod::GaussianDecay, 0.3, 0.0}.validate()), Error);
    CHECK_THROWS_AS((DiscrepancyScorer{ScoreMethod::Threshold, -1.0, 0.25}.validate()), Error);
}

TEST_CASE("temporal weight is the raw gaussian density") {
    DiffusionKernel k{1.0, 10};
    CHECK(k.weight(3, 3) == doctest::Approx(0.39894).epsilon(1e-4));
    CHECK(k.weight(3, 4) == doctest::Approx(0.24197).epsilon(1e-4));
    CHECK(k.weight(3, 5) == doctest::Approx(k.weight(3, 1)));
    CHECK(k.weight(2, 7) == doctest::Approx(k.weight(7, 2)));
    for (int t = 0; t < 10; ++t) CHECK(k.weight(4, t) <= k.weight(4, 4));
    CHECK_THROWS_AS(temporal_weight(k, 0, 10), Error);
    CHECK_THROWS_AS((DiffusionKernel{0.0, 3}.validate()), Error);
    const auto w = k.weights(0);
    REQUIRE(w.size() == 10);
    CHECK(w[1] == doctest::Approx(0.24197).epsilon(1e-4));
}

TEST_CASE("temporal discrepancy damping") {
    // delta = base * (1 - gamma) for a context one timestamp away.
    const double delta = 0.5 * (1.0 - gaussian_density(1.0, 1.0));
    CHECK(delta == doctest::Approx(0.37901).epsilon(1e-4));
}

TEST_CASE("frequency transform and normalization") {
    FrequencyNormalizer n{2.0, 0.01};
    CHECK(n.transform(0) == 0.0);
    CHECK(n.transform(2.0) == doctest::Approx(1.0 - std::exp(-0.5)));
    double prev = -1.0;
    for (int f = 0; f < 20; ++f) {
        CHECK(n.transform(f) >= prev);
        prev = n.transform(f);
    }
    // f = 0 with a peak transform of 0.9.
    CHECK((0.0 + 0.01) / (0.9 + 0.01) == doctest::Approx(0.01099).epsilon(1e-3));

    // Label a: counts 1, 3, 0 over three timestamps; label b: constant.
    std::vector<ObjectInstance> inst = {{0, 0, .5, .5}, {0, 1, .5, .5}, {0, 1, .4, .5}, {0, 1, .3, .5},
                                        {1, 0, .5, .5}, {1, 1, .5, .5}, {1, 2, .5, .5}};
    auto c = Corpus::from_instances({"a", "b"}, 3, 3, inst);
    CHECK(freq_norm(n, c, 0, 1) == doctest::Approx(1.0));
    CHECK(freq_norm(n, c, 0, 2) == doctest::Approx(0.01 / (n.transform(3) + 0.01)));
    CHECK(freq_norm(n, c, 0, 0) == doctest::Approx((n.transform(1) + 0.01) / (n.transform(3) + 0.01)));
    for (int t = 0; t < 3; ++t) CHECK(freq_norm(n, c, 1, t) == doctest::Approx(1.0));
    FrequencyTable table(n, c);
    CHECK(table(0, 2) == doctest::Approx(freq_norm(n, c, 0, 2)));
    CHECK_THROWS_AS(table(2, 0), Error);
    CHECK(default_sigma_f(c) == doctest::Approx(1.5));
}

TEST_CASE("phi and omega") {
    CHECK(phi_avg(0.8, 0.3) == doctest::Approx(0.55));
    CHECK(phi_min(0.8, 0.3) == doctest::Approx(0.3));
    CHECK(phi_avg(1, 1) == 1.0);
    CHECK(phi_avg(0, 1) == 0.5);
    CHECK(phi_min(0, 1) == 0.0);
    CHECK(omega_ln(1.0) == doctest::Approx(0.40546).epsilon(1e-4));
    CHECK(omega_ln(0.5) == doctest::Approx(2.19722).epsilon(1e-4));
    CHECK(omega_ln(0.75) == doctest::Approx(0.69315).epsilon(1e-4));
    // One-sided limits around the jump at 0.5.
    CHECK(omega_ln(0.5 + 1e-9) == doctest::Approx(std::log(3.0)).epsilon(1e-6));
    CHECK(omega_ln(0.5 - 1e-9) == doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-6));
    CHECK_THROWS_AS(omega_ln(0.0), Error);
}
