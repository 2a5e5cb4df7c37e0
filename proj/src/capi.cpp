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

#include "vizobj/vizobj.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "config.hpp"
#include "context.hpp"
#include "corpus.hpp"
#include "embedding.hpp"
#include "error.hpp"
#include "eval.hpp"
#include "io.hpp"
#include "synth.hpp"
#include "trainer.hpp"

struct vz_config {
    vizobj::RunConfig value;
};

struct vz_corpus {
    vizobj::Corpus value;
};

struct vz_pairs {
    std::vector<vizobj::TrainingPair> value;
};

struct vz_embedding {
    vizobj::Embedding value;
    std::vector<double> loss_trace;
    std::string objective;
};

namespace {

thread_local std::string g_last_error;

vz_status to_status(vizobj::ErrorCode code) {
    using vizobj::ErrorCode;
    switch (code) {
        case ErrorCode::Parse: return VZ_ERR_PARSE;
        case ErrorCode::Config: return VZ_ERR_CONFIG;
        case ErrorCode::Index: return VZ_ERR_INDEX;
        case ErrorCode::Domain: return VZ_ERR_DOMAIN;
        case ErrorCode::Degenerate: return VZ_ERR_DEGENERATE;
        case ErrorCode::Training: return VZ_ERR_TRAINING;
        case ErrorCode::Io: return VZ_ERR_IO;
        case ErrorCode::InvalidArgument: return VZ_ERR_INVALID_ARGUMENT;
    }
    return VZ_ERR_INTERNAL;
}

vz_status set_error(vz_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

template <class F>
vz_status guard(F&& body) {
    try {
        return body();
    } catch (const vizobj::Error& e) {
        return set_error(to_status(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(VZ_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(VZ_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(VZ_ERR_INTERNAL, "unknown error");
    }
}

#define VZ_REQUIRE(ptr)                                                                   \
    do {                                                                                  \
        if (!(ptr)) return set_error(VZ_ERR_INVALID_ARGUMENT, "null argument: " #ptr); \
    } while (0)

vz_status copy_string(const std::string& s, char* buf, size_t cap, size_t* needed) {
    if (needed) *needed = s.size() + 1;
    if (cap == 0 && !buf) return VZ_OK;
    if (!buf || cap < s.size() + 1)
        return set_error(VZ_ERR_BUFFER_TOO_SMALL, "buffer holds " + std::to_string(cap) + " bytes, need " +
                                                      std::to_string(s.size() + 1));
    std::memcpy(buf, s.c_str(), s.size() + 1);
    return VZ_OK;
}

vz_status check_capacity(size_t have, size_t need) {
    if (have < need)
        return set_error(VZ_ERR_BUFFER_TOO_SMALL, "buffer holds " + std::to_string(have) + " entries, need " +
                                                      std::to_string(need));
    return VZ_OK;
}

std::optional<int> slice_arg(const vizobj::Embedding& emb, int t) {
    if (t < 0 && !emb.temporal()) return std::nullopt;
    return t;
}

}  // namespace

extern "C" {

const char* vz_version(void) { return "0.1.0"; }

const char* vz_last_error(void) { return g_last_error.c_str(); }

const char* vz_status_name(vz_status status) {
    switch (status) {
        case VZ_OK: return "ok";
        case VZ_ERR_PARSE: return "parse_error";
        case VZ_ERR_CONFIG: return "config_error";
        case VZ_ERR_INDEX: return "index_error";
        case VZ_ERR_DOMAIN: return "domain_error";
        case VZ_ERR_DEGENERATE: return "degenerate_error";
        case VZ_ERR_TRAINING: return "training_error";
        case VZ_ERR_IO: return "io_error";
        case VZ_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case VZ_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
        case VZ_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

vz_status vz_config_new(vz_config** out) {
    VZ_REQUIRE(out);
    return guard([&] {
        *out = new vz_config{};
        return VZ_OK;
    });
}

void vz_config_free(vz_config* config) { delete config; }

vz_status vz_config_set(vz_config* config, const char* key, const char* value) {
    VZ_REQUIRE(config);
    VZ_REQUIRE(key);
    VZ_REQUIRE(value);
    return guard([&] {
        config->value.set(key, value);
        return VZ_OK;
    });
}

vz_status vz_config_get(const vz_config* config, const char* key, char* buf, size_t cap, size_t* needed) {
    VZ_REQUIRE(config);
    VZ_REQUIRE(key);
    return guard([&] { return copy_string(config->value.get(key), buf, cap, needed); });
}

vz_status vz_config_load(vz_config* config, const char* path) {
    VZ_REQUIRE(config);
    VZ_REQUIRE(path);
    return guard([&] {
        vizobj::RunConfig copy = config->value;
        copy.apply_text(vizobj::read_file(path), path);
        config->value = std::move(copy);
        return VZ_OK;
    });
}

vz_status vz_config_validate(const vz_config* config) {
    VZ_REQUIRE(config);
    return guard([&] {
        config->value.validate();
        return VZ_OK;
    });
}

vz_status vz_config_to_text(const vz_config* config, char* buf, size_t cap, size_t* needed) {
    VZ_REQUIRE(config);
    return guard([&] { return copy_string(config->value.to_text(), buf, cap, needed); });
}

size_t vz_config_key_count(void) { return vizobj::RunConfig::keys().size(); }

vz_status vz_config_key_info(size_t index, const char** key, const char** help) {
    const auto& keys = vizobj::RunConfig::keys();
    if (index >= keys.size()) return set_error(VZ_ERR_INDEX, "config key index out of range");
    if (key) *key = keys[index].key.c_str();
    if (help) *help = keys[index].help.c_str();
    return VZ_OK;
}

vz_status vz_generate(const char* scenario, int n_frames, int n_timestamps, uint64_t seed, const char* out_dir) {
    VZ_REQUIRE(scenario);
    VZ_REQUIRE(out_dir);
    return guard([&] {
        vizobj::ScenarioSpec spec{vizobj::parse_scenario(scenario), n_frames, seed, n_timestamps};
        vizobj::write_scenario(vizobj::generate(spec), out_dir);
        return VZ_OK;
    });
}

vz_status vz_corpus_ingest(const char* path, int n_timestamps, vz_corpus** out) {
    VZ_REQUIRE(path);
    VZ_REQUIRE(out);
    return guard([&] {
        *out = new vz_corpus{vizobj::Corpus::ingest(path, n_timestamps)};
        return VZ_OK;
    });
}

vz_status vz_corpus_load_snapshot(const char* path, vz_corpus** out) {
    VZ_REQUIRE(path);
    VZ_REQUIRE(out);
    return guard([&] {
        *out = new vz_corpus{vizobj::Corpus::load_snapshot(path)};
        return VZ_OK;
    });
}

vz_status vz_corpus_save_snapshot(const vz_corpus* corpus, const char* path) {
    VZ_REQUIRE(corpus);
    VZ_REQUIRE(path);
    return guard([&] {
        corpus->value.save_snapshot(path);
        return VZ_OK;
    });
}

void vz_corpus_free(vz_corpus* corpus) { delete corpus; }

int vz_corpus_n_labels(const vz_corpus* corpus) { return corpus ? corpus->value.n_labels() : -1; }
int vz_corpus_n_frames(const vz_corpus* corpus) { return corpus ? corpus->value.n_frames() : -1; }
int vz_corpus_n_timestamps(const vz_corpus* corpus) { return corpus ? corpus->value.n_timestamps() : -1; }

vz_status vz_corpus_label_name(const vz_corpus* corpus, int32_t label, const char** out) {
    VZ_REQUIRE(corpus);
    VZ_REQUIRE(out);
    return guard([&] {
        *out = corpus->value.label_name(label).c_str();
        return VZ_OK;
    });
}

vz_status vz_corpus_label_id(const vz_corpus* corpus, const char* name, int32_t* out) {
    VZ_REQUIRE(corpus);
    VZ_REQUIRE(name);
    VZ_REQUIRE(out);
    return guard([&] {
        *out = corpus->value.label_id(name);
        return VZ_OK;
    });
}

vz_status vz_corpus_frequency(const vz_corpus* corpus, int32_t label, int t, int* out) {
    VZ_REQUIRE(corpus);
    VZ_REQUIRE(out);
    return guard([&] {
        *out = corpus->value.frequency(label, t);
        return VZ_OK;
    });
}

vz_status vz_pairs_generate(const vz_corpus* corpus, const vz_config* config, vz_pairs** out) {
    VZ_REQUIRE(corpus);
    VZ_REQUIRE(config);
    VZ_REQUIRE(out);
    return guard([&] {
        const auto& cfg = config->value;
        cfg.validate();
        if (cfg.n_timestamps != corpus->value.n_timestamps())
            vizobj::fail(vizobj::ErrorCode::Config, "config timestamps (" + std::to_string(cfg.n_timestamps) +
                                                        ") differ from the corpus partition (" +
                                                        std::to_string(corpus->value.n_timestamps()) + ")");
        vizobj::ContextConfig ctx = cfg.context;
        ctx.temporal = cfg.temporal_pairs();
        ctx.sigma_t = cfg.train.sigma_t;
        *out = new vz_pairs{vizobj::generate_pairs(corpus->value, ctx, cfg.scorer, cfg.pair_seed)};
        return VZ_OK;
    });
}

vz_status vz_pairs_save(const vz_pairs* pairs, const vz_corpus* corpus, const char* path) {
    VZ_REQUIRE(pairs);
    VZ_REQUIRE(corpus);
    VZ_REQUIRE(path);
    return guard([&] {
        vizobj::save_pairs(path, pairs->value, corpus->value);
        return VZ_OK;
    });
}

vz_status vz_pairs_load(const char* path, const vz_corpus* corpus, vz_pairs** out) {
    VZ_REQUIRE(path);
    VZ_REQUIRE(corpus);
    VZ_REQUIRE(out);
    return guard([&] {
        *out = new vz_pairs{vizobj::load_pairs(path, corpus->value)};
        return VZ_OK;
    });
}

void vz_pairs_free(vz_pairs* pairs) { delete pairs; }

size_t vz_pairs_count(const vz_pairs* pairs) { return pairs ? pairs->value.size() : 0; }

vz_status vz_pairs_get(const vz_pairs* pairs, size_t index, vz_pair* out) {
    VZ_REQUIRE(pairs);
    VZ_REQUIRE(out);
    if (index >= pairs->value.size()) return set_error(VZ_ERR_INDEX, "pair index out of range");
    const auto& p = pairs->value[index];
    *out = vz_pair{p.ref, p.ctx, p.t_ref, p.delta, p.kind == vizobj::PairKind::Negative ? 1 : 0};
    return VZ_OK;
}

vz_status vz_train(const vz_pairs* pairs, const vz_corpus* corpus, const vz_config* config, vz_embedding** out) {
    VZ_REQUIRE(pairs);
    VZ_REQUIRE(corpus);
    VZ_REQUIRE(config);
    VZ_REQUIRE(out);
    return guard([&] {
        const auto& cfg = config->value;
        cfg.validate();
        auto result = vizobj::train(pairs->value, cfg.train, corpus->value);
        auto* handle = new vz_embedding{std::move(result.embedding), std::move(result.loss_trace),
                                        vizobj::to_string(cfg.train.objective)};
        auto& meta = handle->value.metadata();
        meta["objective"] = handle->objective;
        meta["config"] = cfg.to_json();
        meta["loss_trace"] = handle->loss_trace;
        *out = handle;
        return VZ_OK;
    });
}

vz_status vz_embedding_loss_trace(const vz_embedding* emb, const double** values, size_t* count) {
    VZ_REQUIRE(emb);
    VZ_REQUIRE(values);
    VZ_REQUIRE(count);
    *values = emb->loss_trace.data();
    *count = emb->loss_trace.size();
    return VZ_OK;
}

vz_status vz_embedding_save(const vz_embedding* emb, const char* path) {
    VZ_REQUIRE(emb);
    VZ_REQUIRE(path);
    return guard([&] {
        emb->value.save(path);
        return VZ_OK;
    });
}

vz_status vz_embedding_load(const char* path, vz_embedding** out) {
    VZ_REQUIRE(path);
    VZ_REQUIRE(out);
    return guard([&] {
        auto emb = vizobj::Embedding::load(path);
        std::vector<double> trace;
        std::string objective;
        const auto& meta = emb.metadata();
        if (auto it = meta.find("loss_trace"); it != meta.end() && it->is_array())
            trace = it->get<std::vector<double>>();
        if (auto it = meta.find("objective"); it != meta.end() && it->is_string()) objective = it->get<std::string>();
        *out = new vz_embedding{std::move(emb), std::move(trace), std::move(objective)};
        return VZ_OK;
    });
}

void vz_embedding_free(vz_embedding* emb) { delete emb; }

int vz_embedding_n_objects(const vz_embedding* emb) { return emb ? emb->value.n_objects() : -1; }
int vz_embedding_n_timestamps(const vz_embedding* emb) { return emb ? emb->value.n_timestamps() : -1; }
int vz_embedding_dim(const vz_embedding* emb) { return emb ? emb->value.dim() : -1; }
int vz_embedding_is_temporal(const vz_embedding* emb) { return emb && emb->value.temporal() ? 1 : 0; }

vz_status vz_embedding_label_name(const vz_embedding* emb, int32_t label, const char** out) {
    VZ_REQUIRE(emb);
    VZ_REQUIRE(out);
    if (label < 0 || label >= emb->value.n_objects()) return set_error(VZ_ERR_INDEX, "label id out of range");
    *out = emb->value.labels()[static_cast<size_t>(label)].c_str();
    return VZ_OK;
}

vz_status vz_embedding_label_id(const vz_embedding* emb, const char* name, int32_t* out) {
    VZ_REQUIRE(emb);
    VZ_REQUIRE(name);
    VZ_REQUIRE(out);
    return guard([&] {
        *out = emb->value.label_id(name);
        return VZ_OK;
    });
}

vz_status vz_embedding_vector(const vz_embedding* emb, int32_t label, int t, const double** out) {
    VZ_REQUIRE(emb);
    VZ_REQUIRE(out);
    return guard([&] {
        *out = emb->value.at(label, emb->value.temporal() ? t : (t < 0 ? 0 : t)).data();
        return VZ_OK;
    });
}

const char* vz_embedding_objective(const vz_embedding* emb) { return emb ? emb->objective.c_str() : ""; }

vz_status vz_nearest_neighbors(const vz_embedding* emb, int32_t query, int t, int k, int32_t* labels,
                               double* similarities, size_t cap, size_t* count) {
    VZ_REQUIRE(emb);
    VZ_REQUIRE(count);
    return guard([&] {
        const auto nl = vizobj::nearest_neighbors(emb->value, query, slice_arg(emb->value, t), k);
        *count = nl.neighbors.size();
        if (auto s = check_capacity(cap, nl.neighbors.size()); s != VZ_OK) return s;
        for (size_t i = 0; i < nl.neighbors.size(); ++i) {
            if (labels) labels[i] = nl.neighbors[i].label;
            if (similarities) similarities[i] = nl.neighbors[i].value;
        }
        return VZ_OK;
    });
}

vz_status vz_base_neighbors(const vz_corpus* corpus, int32_t query, int t, int k, int32_t* labels,
                            double* mean_distances, size_t cap, size_t* count) {
    VZ_REQUIRE(corpus);
    VZ_REQUIRE(count);
    return guard([&] {
        const auto nl = vizobj::base_neighbors(corpus->value, query, t, k);
        *count = nl.neighbors.size();
        if (auto s = check_capacity(cap, nl.neighbors.size()); s != VZ_OK) return s;
        for (size_t i = 0; i < nl.neighbors.size(); ++i) {
            if (labels) labels[i] = nl.neighbors[i].label;
            if (mean_distances) mean_distances[i] = nl.neighbors[i].value;
        }
        return VZ_OK;
    });
}

vz_status vz_hit_at_k(const vz_embedding* emb, const vz_corpus* corpus, int k, const int32_t* sample_labels,
                      const int* sample_ts, size_t n_sample, double* out) {
    VZ_REQUIRE(emb);
    VZ_REQUIRE(corpus);
    VZ_REQUIRE(out);
    if (n_sample > 0 && (!sample_labels || !sample_ts))
        return set_error(VZ_ERR_INVALID_ARGUMENT, "null sample arrays with a nonzero sample size");
    return guard([&] {
        std::vector<std::pair<vizobj::LabelId, int>> sample;
        if (n_sample == 0) {
            sample = vizobj::default_hit_sample(corpus->value);
        } else {
            for (size_t i = 0; i < n_sample; ++i) sample.emplace_back(sample_labels[i], sample_ts[i]);
        }
        *out = vizobj::hit_at_k(emb->value, corpus->value, k, sample);
        return VZ_OK;
    });
}

vz_status vz_kmeans_silhouette(const vz_embedding* emb, int k, uint64_t seed, int* assignment, double* silhouette) {
    VZ_REQUIRE(emb);
    return guard([&] {
        const auto r = vizobj::kmeans_silhouette(emb->value, k, seed);
        if (assignment) std::copy(r.assignment.begin(), r.assignment.end(), assignment);
        if (silhouette) *silhouette = r.silhouette;
        return VZ_OK;
    });
}

vz_status vz_rand_index(const int* a, const int* b, size_t n, double* out) {
    VZ_REQUIRE(out);
    if (n > 0 && (!a || !b)) return set_error(VZ_ERR_INVALID_ARGUMENT, "null partition");
    return guard([&] {
        *out = vizobj::rand_index(std::vector<int>(a, a + n), std::vector<int>(b, b + n));
        return VZ_OK;
    });
}

vz_status vz_spearman(const double* a, const double* b, size_t n, double* out) {
    VZ_REQUIRE(out);
    if (n > 0 && (!a || !b)) return set_error(VZ_ERR_INVALID_ARGUMENT, "null ranking");
    return guard([&] {
        *out = vizobj::spearman(std::vector<double>(a, a + n), std::vector<double>(b, b + n));
        return VZ_OK;
    });
}

vz_status vz_clustering_consistency(const vz_embedding* emb, const int* categories, size_t n, int k, int t,
                                    double* out) {
    VZ_REQUIRE(emb);
    VZ_REQUIRE(categories);
    VZ_REQUIRE(out);
    return guard([&] {
        *out = vizobj::clustering_consistency(emb->value, std::vector<int>(categories, categories + n), k,
                                              slice_arg(emb->value, t));
        return VZ_OK;
    });
}

vz_status vz_similarity_series(const vz_embedding* emb, int32_t a, int32_t b, double* out, size_t cap,
                               size_t* count) {
    VZ_REQUIRE(emb);
    VZ_REQUIRE(count);
    return guard([&] {
        const auto s = vizobj::similarity_series(emb->value, a, b);
        *count = s.size();
        if (auto st = check_capacity(cap, s.size()); st != VZ_OK) return st;
        if (out) std::copy(s.begin(), s.end(), out);
        return VZ_OK;
    });
}

vz_status vz_top_pairs(const vz_embedding* emb, int t, int m, vz_similar_pair* out, size_t cap, size_t* count) {
    VZ_REQUIRE(emb);
    VZ_REQUIRE(count);
    return guard([&] {
        const auto pairs = vizobj::top_pairs(emb->value, t, m);
        *count = pairs.size();
        if (auto s = check_capacity(cap, pairs.size()); s != VZ_OK) return s;
        if (out)
            for (size_t i = 0; i < pairs.size(); ++i) out[i] = vz_similar_pair{pairs[i].a, pairs[i].b, pairs[i].similarity};
        return VZ_OK;
    });
}

vz_status vz_narrative_prompt(const vz_embedding* emb, int m_per_t, char* buf, size_t cap, size_t* needed) {
    VZ_REQUIRE(emb);
    return guard([&] { return copy_string(vizobj::narrative_prompt(emb->value, m_per_t), buf, cap, needed); });
}

vz_status vz_pca_2d(const vz_embedding* emb, int t, double* xy, size_t cap) {
    VZ_REQUIRE(emb);
    VZ_REQUIRE(xy);
    return guard([&] {
        const auto coords = vizobj::pca_2d(emb->value, slice_arg(emb->value, t));
        if (auto s = check_capacity(cap, 2 * coords.size()); s != VZ_OK) return s;
        for (size_t i = 0; i < coords.size(); ++i) {
            xy[2 * i] = coords[i][0];
            xy[2 * i + 1] = coords[i][1];
        }
        return VZ_OK;
    });
}

vz_status vz_classify_contexts(const vz_embedding* emb, const int* classes, size_t n, uint64_t split_seed,
                               double train_fraction, double* accuracy) {
    VZ_REQUIRE(emb);
    VZ_REQUIRE(classes);
    VZ_REQUIRE(accuracy);
    return guard([&] {
        *accuracy = vizobj::classify_contexts(emb->value, std::vector<int>(classes, classes + n), split_seed,
                                              train_fraction)
                        .accuracy;
        return VZ_OK;
    });
}

vz_status vz_permutation_baseline(const vz_embedding* emb, const int* classes, size_t n, uint64_t split_seed,
                                  double train_fraction, int n_permutations, uint64_t permutation_seed,
                                  double* accuracy) {
    VZ_REQUIRE(emb);
    VZ_REQUIRE(classes);
    VZ_REQUIRE(accuracy);
    return guard([&] {
        *accuracy = vizobj::permutation_baseline(emb->value, std::vector<int>(classes, classes + n), split_seed,
                                                 train_fraction, n_permutations, permutation_seed);
        return VZ_OK;
    });
}

}  // extern "C"
