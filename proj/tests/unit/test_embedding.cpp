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
#include <filesystem>
#include <fstream>
#include <random>

#include "embedding.hpp"
#include "error.hpp"

using namespace vizobj;

TEST_CASE("cosine helpers") {
    const std::vector<double> x{1.0, 0.0}, y{0.0, 2.0}, z{-3.0, 0.0}, w{1.0, 1.0};
    CHECK(cosine_distance(x, y) == doctest::Approx(1.0));
    CHECK(cosine_distance(x, z) == doctest::Approx(2.0));
    CHECK(cosine_distance(x, x) == doctest::Approx(0.0));
    CHECK(cosine_similarity(x, w) == doctest::Approx(1.0 / std::sqrt(2.0)));
    const std::vector<double> zero{0.0, 0.0}, three{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(cosine_distance(x, zero), Error);
    CHECK_THROWS_AS(cosine_distance(x, three), Error);
}

TEST_CASE("cosine distance is scale invariant and bounded") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> a(5), b(5);
        for (auto& v : a) v = n(rng);
        for (auto& v : b) v = n(rng);
        const double d = cosine_distance(a, b);
        CHECK(d >= -1e-12);
        CHECK(d <= 2.0 + 1e-12);
        auto a2 = a;
        for (auto& v : a2) v *= 7.5;
        CHECK(cosine_distance(a2, b) == doctest::Approx(d));
        CHECK(cosine_distance(b, a) == doctest::Approx(d));
    }
}

TEST_CASE("diffused vector of unit slices equals the kernel weights") {
    Embedding e(EmbeddingKind::Temporal, {"a"}, 2, 2);
    e.vec(0, 0)[0] = 1.0;
    e.vec(0, 1)[1] = 1.0;
    DiffusionKernel k{1.0, 2};
    auto v = diffused_vector(e, 0, 0, k);
    CHECK(v[0] == doctest::Approx(0.39894).epsilon(1e-4));
    CHECK(v[1] == doctest::Approx(0.24197).epsilon(1e-4));
    auto w = diffused_vector(e, 0, 1, k);
    CHECK(w[0] == doctest::Approx(0.24197).epsilon(1e-4));
    CHECK(w[1] == doctest::Approx(0.39894).epsilon(1e-4));
}

TEST_CASE("uniform init is seeded and in range") {
    auto a = Embedding::uniform(EmbeddingKind::Temporal, {"a", "b", "c"}, 4, 8, 42);
    auto b = Embedding::uniform(EmbeddingKind::Temporal, {"a", "b", "c"}, 4, 8, 42);
    auto c = Embedding::uniform(EmbeddingKind::Temporal, {"a", "b", "c"}, 4, 8, 43);
    CHECK(a == b);
    CHECK_FALSE(a == c);
    CHECK(a.data().size() == 3 * 4 * 8);
    for (double v : a.data()) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
    CHECK(a.label_id("b") == 1);
    CHECK_THROWS_AS(a.label_id("zzz"), Error);
    CHECK_THROWS_AS(a.at(0, 4), Error);
    CHECK_THROWS_AS(a.at(3, 0), Error);
}

TEST_CASE("save and load round trip bit-exactly") {
    const auto dir = std::filesystem::temp_directory_path() / "vizobj_test_embedding";
    std::filesystem::create_directories(dir);
    const auto path = dir / "emb.json";
    auto e = Embedding::uniform(EmbeddingKind::Temporal, {"x", "y"}, 3, 5, 9);
    e.vec(1, 2)[4] = 1.0 / 3.0;
    e.metadata()["objective"] = "t2";
    e.metadata()["loss_trace"] = {0.5, 0.25};
    e.save(path);
    auto back = Embedding::load(path);
    CHECK(back == e);
    CHECK(back.metadata()["objective"] == "t2");
    CHECK(back.metadata()["loss_trace"].size() == 2);

    auto s = Embedding::uniform(EmbeddingKind::Static, {"x"}, 1, 3, 1);
    s.save(path);
    CHECK(Embedding::load(path) == s);

    // Truncated payload is rejected.
    std::filesystem::resize_file(path.string() + ".bin", 8);
    CHECK_THROWS_AS(Embedding::load(path), Error);
    std::ofstream(path) << "{not json";
    CHECK_THROWS_AS(Embedding::load(path), Error);
    CHECK_THROWS_AS(Embedding::load(dir / "missing.json"), Error);
    std::filesystem::remove_all(dir);
}
