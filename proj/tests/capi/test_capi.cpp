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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <vizobj/vizobj.h>

namespace fs = std::filesystem;

namespace {

struct Fixture {
    fs::path dir = fs::temp_directory_path() / "vizobj_capi_test";
    vz_config* cfg = nullptr;
    vz_corpus* corpus = nullptr;
    vz_pairs* pairs = nullptr;
    vz_embedding* emb = nullptr;

    Fixture() {
        fs::remove_all(dir);
        fs::create_directories(dir);
        REQUIRE(vz_generate("two_scene", 120, 3, 5, dir.string().c_str()) == VZ_OK);
        REQUIRE(vz_corpus_ingest((dir / "annotations.jsonl").string().c_str(), 3, &corpus) == VZ_OK);
        REQUIRE(vz_config_new(&cfg) == VZ_OK);
        REQUIRE(vz_config_set(cfg, "timestamps", "3") == VZ_OK);
        REQUIRE(vz_config_set(cfg, "objective", "t2") == VZ_OK);
        REQUIRE(vz_config_set(cfg, "dim", "6") == VZ_OK);
        REQUIRE(vz_config_set(cfg, "epochs", "3") == VZ_OK);
        REQUIRE(vz_pairs_generate(corpus, cfg, &pairs) == VZ_OK);
        REQUIRE(vz_train(pairs, corpus, cfg, &emb) == VZ_OK);
    }
    ~Fixture() {
        vz_embedding_free(emb);
        vz_pairs_free(pairs);
        vz_corpus_free(corpus);
        vz_config_free(cfg);
        fs::remove_all(dir);
    }
};

}  // namespace

TEST_CASE("status names and version") {
    CHECK(std::string(vz_version()) == "0.1.0");
    CHECK(std::string(vz_status_name(VZ_OK)) == "ok");
    CHECK(std::string(vz_status_name(VZ_ERR_BUFFER_TOO_SMALL)).size() > 0);
}

TEST_CASE("config keys, errors and text buffers") {
    vz_config* c = nullptr;
    REQUIRE(vz_config_new(&c) == VZ_OK);
    CHECK(vz_config_key_count() > 10);
    const char* key = nullptr;
    const char* help = nullptr;
    CHECK(vz_config_key_info(0, &key, &help) == VZ_OK);
    CHECK(std::string(key).size() > 0);
    CHECK(vz_config_key_info(9999, &key, &help) == VZ_ERR_INDEX);

    CHECK(vz_config_set(c, "no_such_key", "1") == VZ_ERR_CONFIG);
    CHECK(std::string(vz_last_error()).find("no_such_key") != std::string::npos);
    CHECK(vz_config_set(c, nullptr, "1") == VZ_ERR_INVALID_ARGUMENT);

    REQUIRE(vz_config_set(c, "dim", "12") == VZ_OK);
    char small[2];
    size_t needed = 0;
    CHECK(vz_config_get(c, "dim", small, sizeof small, &needed) == VZ_ERR_BUFFER_TOO_SMALL);
    CHECK(needed == 3);
    std::vector<char> buf(needed);
    CHECK(vz_config_get(c, "dim", buf.data(), buf.size(), &needed) == VZ_OK);
    CHECK(std::string(buf.data()) == "12");

    CHECK(vz_config_to_text(c, nullptr, 0, &needed) == VZ_OK);
    std::vector<char> text(needed);
    CHECK(vz_config_to_text(c, text.data(), text.size(), &needed) == VZ_OK);
    CHECK(std::string(text.data()).find("dim = 12") != std::string::npos);

    REQUIRE(vz_config_set(c, "objective", "t3") == VZ_OK);
    CHECK(vz_config_validate(c) == VZ_ERR_CONFIG);
    CHECK(vz_config_load(c, "/nonexistent/vizobj.cfg") == VZ_ERR_IO);
    vz_config_free(c);
    vz_config_free(nullptr);
}

TEST_CASE("end-to-end pipeline through the C API") {
    Fixture fx;
    CHECK(vz_corpus_n_labels(fx.corpus) == 20);
    CHECK(vz_corpus_n_frames(fx.corpus) == 120);
    CHECK(vz_corpus_n_timestamps(fx.corpus) == 3);
    int32_t stove = -1;
    REQUIRE(vz_corpus_label_id(fx.corpus, "stove", &stove) == VZ_OK);
    const char* name = nullptr;
    REQUIRE(vz_corpus_label_name(fx.corpus, stove, &name) == VZ_OK);
    CHECK(std::string(name) == "stove");
    int freq = -1;
    CHECK(vz_corpus_frequency(fx.corpus, stove, 0, &freq) == VZ_OK);
    CHECK(freq > 0);
    CHECK(vz_corpus_label_id(fx.corpus, "unicorn", &stove) == VZ_ERR_INDEX);

    REQUIRE(vz_pairs_count(fx.pairs) > 0);
    vz_pair p{};
    REQUIRE(vz_pairs_get(fx.pairs, 0, &p) == VZ_OK);
    CHECK(p.t_ref >= 0);
    CHECK(p.delta >= 0.0);
    CHECK(p.delta <= 1.0);
    CHECK(vz_pairs_get(fx.pairs, vz_pairs_count(fx.pairs), &p) == VZ_ERR_INDEX);

    const auto pair_path = (fx.dir / "pairs.csv").string();
    REQUIRE(vz_pairs_save(fx.pairs, fx.corpus, pair_path.c_str()) == VZ_OK);
    vz_pairs* loaded = nullptr;
    REQUIRE(vz_pairs_load(pair_path.c_str(), fx.corpus, &loaded) == VZ_OK);
    CHECK(vz_pairs_count(loaded) == vz_pairs_count(fx.pairs));
    vz_pairs_free(loaded);

    CHECK(vz_embedding_n_objects(fx.emb) == 20);
    CHECK(vz_embedding_n_timestamps(fx.emb) == 3);
    CHECK(vz_embedding_dim(fx.emb) == 6);
    CHECK(vz_embedding_is_temporal(fx.emb) == 1);
    CHECK(std::string(vz_embedding_objective(fx.emb)) == "t2");
    const double* trace = nullptr;
    size_t n_trace = 0;
    REQUIRE(vz_embedding_loss_trace(fx.emb, &trace, &n_trace) == VZ_OK);
    CHECK(n_trace == 4);

    const auto emb_path = (fx.dir / "emb.json").string();
    REQUIRE(vz_embedding_save(fx.emb, emb_path.c_str()) == VZ_OK);
    vz_embedding* back = nullptr;
    REQUIRE(vz_embedding_load(emb_path.c_str(), &back) == VZ_OK);
    const double* v1 = nullptr;
    const double* v2 = nullptr;
    REQUIRE(vz_embedding_vector(fx.emb, 3, 2, &v1) == VZ_OK);
    REQUIRE(vz_embedding_vector(back, 3, 2, &v2) == VZ_OK);
    for (int i = 0; i < 6; ++i) CHECK(v1[i] == v2[i]);
    CHECK(vz_embedding_vector(back, 3, 7, &v2) == VZ_ERR_INDEX);
    vz_embedding_free(back);

    int32_t labels[5];
    double sims[5];
    size_t count = 0;
    CHECK(vz_nearest_neighbors(fx.emb, 0, 1, 5, labels, sims, 5, &count) == VZ_OK);
    CHECK(count == 5);
    CHECK(sims[0] >= sims[4]);
    CHECK(vz_nearest_neighbors(fx.emb, 0, 1, 5, labels, sims, 2, &count) == VZ_ERR_BUFFER_TOO_SMALL);
    CHECK(count == 5);
    CHECK(vz_base_neighbors(fx.corpus, 0, 0, 3, labels, sims, 5, &count) == VZ_OK);

    double hit = -1;
    CHECK(vz_hit_at_k(fx.emb, fx.corpus, 3, nullptr, nullptr, 0, &hit) == VZ_OK);
    CHECK(hit >= 0.0);
    CHECK(hit <= 1.0);

    double series[3];
    CHECK(vz_similarity_series(fx.emb, 0, 1, series, 3, &count) == VZ_OK);
    CHECK(count == 3);
    vz_similar_pair top[4];
    CHECK(vz_top_pairs(fx.emb, 0, 4, top, 4, &count) == VZ_OK);
    CHECK(top[0].similarity >= top[3].similarity);
    size_t needed = 0;
    CHECK(vz_narrative_prompt(fx.emb, 2, nullptr, 0, &needed) == VZ_OK);
    char tiny[4];
    CHECK(vz_narrative_prompt(fx.emb, 2, tiny, sizeof tiny, &needed) == VZ_ERR_BUFFER_TOO_SMALL);
    std::vector<char> text(needed);
    CHECK(vz_narrative_prompt(fx.emb, 2, text.data(), text.size(), &needed) == VZ_OK);
    CHECK(std::string(text.data()).find("Time 2:") != std::string::npos);
    std::vector<double> xy(40);
    CHECK(vz_pca_2d(fx.emb, 1, xy.data(), xy.size()) == VZ_OK);
    CHECK(vz_pca_2d(fx.emb, 1, xy.data(), 10) == VZ_ERR_BUFFER_TOO_SMALL);

    std::vector<int> classes(20);
    for (int l = 0; l < 20; ++l) {
        const char* ln = nullptr;
        vz_embedding_label_name(fx.emb, l, &ln);
        const std::string s(ln);
        classes[static_cast<size_t>(l)] = (s == "stove" || s == "sink" || s == "fridge" || s == "pot" || s == "kettle" ||
                                           s == "cup" || s == "plate" || s == "oven" || s == "toaster" || s == "cutting-board")
                                              ? 0
                                              : 1;
    }
    double acc = -1, base = -1;
    CHECK(vz_classify_contexts(fx.emb, classes.data(), classes.size(), 1, 0.5, &acc) == VZ_OK);
    CHECK(vz_permutation_baseline(fx.emb, classes.data(), classes.size(), 1, 0.5, 5, 2, &base) == VZ_OK);
    CHECK(acc >= 0.0);
    CHECK(base <= 1.0);
    CHECK(vz_classify_contexts(fx.emb, classes.data(), 3, 1, 0.5, &acc) == VZ_ERR_INVALID_ARGUMENT);
    double cons = -1;
    CHECK(vz_clustering_consistency(fx.emb, classes.data(), classes.size(), 3, 0, &cons) == VZ_OK);

    // Static helpers need a static table.
    std::vector<int> assign(20);
    double sil = 0;
    CHECK(vz_kmeans_silhouette(fx.emb, 2, 1, assign.data(), &sil) != VZ_OK);
}

TEST_CASE("static pipeline with k-means") {
    const auto dir = fs::temp_directory_path() / "vizobj_capi_static";
    fs::remove_all(dir);
    REQUIRE(vz_generate("grid5x5", 60, 1, 3, dir.string().c_str()) == VZ_OK);
    vz_corpus* corpus = nullptr;
    REQUIRE(vz_corpus_ingest((dir / "annotations.jsonl").string().c_str(), 1, &corpus) == VZ_OK);
    const auto snap = (dir / "corpus.json").string();
    REQUIRE(vz_corpus_save_snapshot(corpus, snap.c_str()) == VZ_OK);
    vz_corpus* again = nullptr;
    REQUIRE(vz_corpus_load_snapshot(snap.c_str(), &again) == VZ_OK);
    CHECK(vz_corpus_n_labels(again) == vz_corpus_n_labels(corpus));
    vz_corpus_free(again);
    vz_config* cfg = nullptr;
    vz_config_new(&cfg);
    vz_config_set(cfg, "epochs", "2");
    vz_config_set(cfg, "dim", "8");
    vz_pairs* pairs = nullptr;
    REQUIRE(vz_pairs_generate(corpus, cfg, &pairs) == VZ_OK);
    vz_embedding* emb = nullptr;
    REQUIRE(vz_train(pairs, corpus, cfg, &emb) == VZ_OK);
    std::vector<int> assign(static_cast<size_t>(vz_embedding_n_objects(emb)));
    double sil = -2;
    CHECK(vz_kmeans_silhouette(emb, 3, 1, assign.data(), &sil) == VZ_OK);
    CHECK(sil >= -1.0);
    CHECK(sil <= 1.0);
    int a[] = {0, 0, 1, 1}, b[] = {1, 1, 0, 0};
    double ri = 0, rho = 0;
    CHECK(vz_rand_index(a, b, 4, &ri) == VZ_OK);
    CHECK(ri == doctest::Approx(1.0));
    double x[] = {1, 2, 3}, y[] = {3, 2, 1}, z[] = {1, 1, 1};
    CHECK(vz_spearman(x, y, 3, &rho) == VZ_OK);
    CHECK(rho == doctest::Approx(-1.0));
    CHECK(vz_spearman(x, z, 3, &rho) == VZ_ERR_DEGENERATE);

    // Timestamp mismatch between config and corpus is a config error.
    vz_config_set(cfg, "timestamps", "4");
    vz_pairs* bad = nullptr;
    CHECK(vz_pairs_generate(corpus, cfg, &bad) == VZ_ERR_CONFIG);
    CHECK(bad == nullptr);

    vz_embedding_free(emb);
    vz_pairs_free(pairs);
    vz_config_free(cfg);
    vz_corpus_free(corpus);
    CHECK(vz_corpus_ingest("/nonexistent.jsonl", 1, &corpus) == VZ_ERR_IO);
    fs::remove_all(dir);
}
