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

#include <string>

#include "config.hpp"
#include "error.hpp"

using namespace vizobj;

TEST_CASE("every key round-trips through text") {
    RunConfig c;
    c.set("objective", "t5");
    c.set("timestamps", "4");
    c.set("negatives", "2");
    c.set("sigma_d", "0.125");
    c.set("learning_rate", "0.3");
    c.set("optimizer", "adam");
    c.set("neighbor_timestamps", "true");
    const auto text = c.to_text();
    auto back = RunConfig::from_text(text);
    for (const auto& k : RunConfig::keys()) CHECK(back.get(k.key) == c.get(k.key));
    CHECK(back.train.objective == Objective::T5);
    CHECK(back.context.negatives_per_positive == 2);
    CHECK(back.scorer.sigma_d == 0.125);
    CHECK(back.to_json()["objective"] == "t5");
}

TEST_CASE("sigma_t sets both the context window and the trainer") {
    RunConfig c;
    c.set("sigma_t", "0.7");
    CHECK(c.context.sigma_t == 0.7);
    CHECK(c.train.sigma_t == 0.7);
}

TEST_CASE("config text parsing reports bad lines") {
    RunConfig c;
    CHECK_NOTHROW(c.apply_text("# comment\n\ndim = 8  # trailing\n"));
    CHECK(c.train.dim == 8);
    try {
        c.apply_text("dim = 8\nbogus = 1\n", "run.cfg");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("run.cfg:2:") != std::string::npos);
    }
    CHECK_THROWS_AS(c.apply_text("dim 8\n"), Error);
    CHECK_THROWS_AS(c.set("dim", "eight"), Error);
    CHECK_THROWS_AS(c.set("same_frame", "maybe"), Error);
    CHECK_THROWS_AS(c.get("nope"), Error);
}

TEST_CASE("cross-field validation") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    c.set("objective", "t2");
    CHECK_THROWS_AS(c.validate(), Error);  // temporal objective with a single timestamp
    c.set("timestamps", "3");
    CHECK_NOTHROW(c.validate());
    CHECK(c.temporal_pairs());
    RunConfig s;
    s.set("neighbor_timestamps", "true");
    CHECK_THROWS_AS(s.validate(), Error);
    s.set("epochs", "-1");
    CHECK_THROWS_AS(s.validate(), Error);
}
