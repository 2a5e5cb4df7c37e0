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

#include <filesystem>
#include <sstream>

#include "corpus.hpp"
#include "error.hpp"

using namespace vizobj;

namespace {

Corpus ingest_text(const std::string& text, int n_ts) {
    std::istringstream in(text);
    return Corpus::ingest(in, n_ts, "test.jsonl");
}

ErrorCode code_of(const std::string& text, int n_ts) {
    try {
        ingest_text(text, n_ts);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::Parse;
}

std::string message_of(const std::string& text, int n_ts) {
    try {
        ingest_text(text, n_ts);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

const char* kSmall =
    "{\"label\":\"cat\",\"frame\":0,\"cx\":0.1,\"cy\":0.2}\n"
    "{\"label\":\"dog\",\"frame\":0,\"cx\":0.5,\"cy\":0.5}\n"
    "\n"
    "{\"label\":\"cat\",\"frame\":1,\"x\":64,\"y\":48,\"w\":640,\"h\":480}\n"
    "{\"label\":\"cat\",\"frame\":3,\"cx\":1.0,\"cy\":0.0}\n"
    "{\"label\":\"bird\",\"frame\":4,\"cx\":0.3,\"cy\":0.3}\n";

}  // namespace

TEST_CASE("ingest assigns ids by first appearance and normalizes pixel boxes") {
    auto c = ingest_text(kSmall, 2);
    REQUIRE(c.n_labels() == 3);
    CHECK(c.labels() == std::vector<std::string>{"cat", "dog", "bird"});
    CHECK(c.n_frames() == 5);
    CHECK(c.n_instances() == 5);
    CHECK(c.frames_per_timestamp() == 3);
    CHECK(c.frame(1).size() == 1);
    CHECK(c.frame(1)[0].cx == doctest::Approx(0.1));
    CHECK(c.frame(1)[0].cy == doctest::Approx(0.1));
    CHECK(c.frame(2).empty());
    CHECK(c.label_id("bird") == 2);
    CHECK_FALSE(c.find_label("fish").has_value());
    CHECK_THROWS_AS(c.label_id("fish"), Error);
}

TEST_CASE("timestamp partition and frequencies") {
    auto c = ingest_text(kSmall, 2);
    CHECK(c.timestamp_of(0) == 0);
    CHECK(c.timestamp_of(2) == 0);
    CHECK(c.timestamp_of(3) == 1);
    CHECK(c.frame_range(0) == std::pair<int, int>{0, 3});
    CHECK(c.frame_range(1) == std::pair<int, int>{3, 5});
    const auto cat = c.label_id("cat");
    CHECK(c.frequency(cat, 0) == 2);
    CHECK(c.frequency(cat, 1) == 1);
    CHECK(c.total_frequency(cat) == 3);
    CHECK(c.frequency(c.label_id("dog"), 1) == 0);
    CHECK_FALSE(c.present(c.label_id("dog"), 1));
    CHECK(c.max_frequency() == 2);
    CHECK_THROWS_AS(c.frequency(cat, 2), Error);
    CHECK_THROWS_AS(c.frequency(7, 0), Error);
    CHECK(partition_of(9, 3) == 3);
}

TEST_CASE("frequencies sum to the instance count") {
    auto c = ingest_text(kSmall, 3);
    std::size_t total = 0;
    for (LabelId l = 0; l < c.n_labels(); ++l)
        for (int t = 0; t < c.n_timestamps(); ++t) total += static_cast<std::size_t>(c.frequency(l, t));
    CHECK(total == c.n_instances());
}

TEST_CASE("labels_in_frame is sorted and distinct") {
    std::vector<ObjectInstance> inst = {{2, 0, .1, .1}, {0, 0, .2, .2}, {2, 0, .3, .3}, {1, 1, .5, .5}};
    auto c = Corpus::from_instances({"a", "b", "c"}, 2, 1, inst);
    CHECK(c.labels_in_frame(0) == std::vector<LabelId>{0, 2});
    CHECK(c.labels_in_frame(1) == std::vector<LabelId>{1});
}

TEST_CASE("ingest errors") {
    CHECK(code_of("", 1) == ErrorCode::Parse);
    CHECK(message_of("", 1).find("no instances") != std::string::npos);
    CHECK(code_of("{\"label\":\"a\",\"frame\":0,\"cx\":0.5,\"cy\":0.5}\n{oops\n", 1) == ErrorCode::Parse);
    CHECK(message_of("{\"label\":\"a\",\"frame\":0,\"cx\":0.5,\"cy\":0.5}\n{oops\n", 1).find(":2") != std::string::npos);
    CHECK(code_of("{\"frame\":0,\"cx\":0.5,\"cy\":0.5}\n", 1) == ErrorCode::Parse);
    CHECK(code_of("{\"label\":\"a\",\"frame\":-1,\"cx\":0.5,\"cy\":0.5}\n", 1) == ErrorCode::Parse);
    CHECK(code_of("{\"label\":\"a\",\"frame\":0,\"cx\":1.5,\"cy\":0.5}\n", 1) == ErrorCode::Domain);
    const auto msg = message_of("{\"label\":\"zebra\",\"frame\":4,\"cx\":0.5,\"cy\":-0.1}\n", 1);
    CHECK(msg.find("zebra") != std::string::npos);
    CHECK(msg.find("frame 4") != std::string::npos);
    CHECK(code_of("{\"label\":\"a\",\"frame\":0,\"x\":700,\"y\":5,\"w\":640,\"h\":480}\n", 1) == ErrorCode::Domain);
    CHECK(code_of("{\"label\":\"a\",\"frame\":0,\"cx\":\"left\",\"cy\":0.5}\n", 1) == ErrorCode::Parse);
    CHECK(code_of("{\"label\":\"a\",\"frame\":1,\"cx\":0.5,\"cy\":0.5}\n", 3) == ErrorCode::Config);
    CHECK(code_of("{\"label\":\"a\",\"frame\":1,\"cx\":0.5,\"cy\":0.5}\n", 0) == ErrorCode::Config);
    CHECK_THROWS_AS(Corpus::ingest(std::filesystem::path("/nonexistent/file.jsonl"), 1), Error);
}

TEST_CASE("from_instances validation") {
    CHECK_THROWS_AS(Corpus::from_instances({"a"}, 2, 1, {{1, 0, .5, .5}}), Error);
    CHECK_THROWS_AS(Corpus::from_instances({"a"}, 2, 1, {{0, 5, .5, .5}}), Error);
    CHECK_THROWS_AS(Corpus::from_instances({"a", "b"}, 2, 1, {{0, 0, .5, .5}}), Error);
}

TEST_CASE("snapshot round trip") {
    auto c = ingest_text(kSmall, 2);
    auto copy = Corpus::from_json(c.to_json());
    CHECK(copy == c);
    const auto path = std::filesystem::temp_directory_path() / "vizobj_unit_snapshot.json";
    c.save_snapshot(path);
    CHECK(Corpus::load_snapshot(path) == c);
    std::filesystem::remove(path);
    auto doc = c.to_json();
    doc["format"] = "other";
    CHECK_THROWS_AS(Corpus::from_json(doc), Error);
}
