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

#ifndef VIZOBJ_VIZOBJ_H
#define VIZOBJ_VIZOBJ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VIZOBJ_BUILDING)
#    define VZ_API __declspec(dllexport)
#  else
#    define VZ_API __declspec(dllimport)
#  endif
#else
#  define VZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns a status; on failure vz_last_error() holds a
 * one-line message for the calling thread until its next failing call. */
typedef enum vz_status {
    VZ_OK = 0,
    VZ_ERR_PARSE = 1,
    VZ_ERR_CONFIG = 2,
    VZ_ERR_INDEX = 3,
    VZ_ERR_DOMAIN = 4,
    VZ_ERR_DEGENERATE = 5,
    VZ_ERR_TRAINING = 6,
    VZ_ERR_IO = 7,
    VZ_ERR_INVALID_ARGUMENT = 8,
    VZ_ERR_BUFFER_TOO_SMALL = 9,
    VZ_ERR_INTERNAL = 99
} vz_status;

typedef struct vz_config vz_config;
typedef struct vz_corpus vz_corpus;
typedef struct vz_pairs vz_pairs;
typedef struct vz_embedding vz_embedding;

typedef struct vz_pair {
    int32_t ref;
    int32_t ctx;
    int32_t t_ref; /* -1 for static pairs */
    double delta;
    int32_t negative; /* 1 for sampled negatives */
} vz_pair;

typedef struct vz_similar_pair {
    int32_t a;
    int32_t b;
    double similarity;
} vz_similar_pair;

VZ_API const char* vz_version(void);
VZ_API const char* vz_last_error(void);
VZ_API const char* vz_status_name(vz_status status);

/* ---- configuration: flat key/value store over every tunable ---- */
VZ_API vz_status vz_config_new(vz_config** out);
VZ_API void vz_config_free(vz_config* config);
VZ_API vz_status vz_config_set(vz_config* config, const char* key, const char* value);
/* Writes the NUL-terminated value; *needed gets the size including the NUL.
 * String outputs accept buf = NULL, cap = 0 as a size query that returns VZ_OK. */
VZ_API vz_status vz_config_get(const vz_config* config, const char* key, char* buf, size_t cap, size_t* needed);
/* Applies a `key = value` file on top of the current values. */
VZ_API vz_status vz_config_load(vz_config* config, const char* path);
VZ_API vz_status vz_config_validate(const vz_config* config);
VZ_API vz_status vz_config_to_text(const vz_config* config, char* buf, size_t cap, size_t* needed);
VZ_API size_t vz_config_key_count(void);
VZ_API vz_status vz_config_key_info(size_t index, const char** key, const char** help);

/* ---- synthetic scenarios: grid5x5, seq4, school_event, two_scene ---- */
/* Writes <out_dir>/annotations.jsonl and <out_dir>/ground_truth.json. */
VZ_API vz_status vz_generate(const char* scenario, int n_frames, int n_timestamps, uint64_t seed, const char* out_dir);

/* ---- corpus ---- */
VZ_API vz_status vz_corpus_ingest(const char* path, int n_timestamps, vz_corpus** out);
VZ_API vz_status vz_corpus_load_snapshot(const char* path, vz_corpus** out);
VZ_API vz_status vz_corpus_save_snapshot(const vz_corpus* corpus, const char* path);
VZ_API void vz_corpus_free(vz_corpus* corpus);
VZ_API int vz_corpus_n_labels(const vz_corpus* corpus);
VZ_API int vz_corpus_n_frames(const vz_corpus* corpus);
VZ_API int vz_corpus_n_timestamps(const vz_corpus* corpus);
/* The returned string lives as long as the corpus. */
VZ_API vz_status vz_corpus_label_name(const vz_corpus* corpus, int32_t label, const char** out);
VZ_API vz_status vz_corpus_label_id(const vz_corpus* corpus, const char* name, int32_t* out);
VZ_API vz_status vz_corpus_frequency(const vz_corpus* corpus, int32_t label, int t, int* out);

/* ---- training pairs ---- */
VZ_API vz_status vz_pairs_generate(const vz_corpus* corpus, const vz_config* config, vz_pairs** out);
VZ_API vz_status vz_pairs_save(const vz_pairs* pairs, const vz_corpus* corpus, const char* path);
VZ_API vz_status vz_pairs_load(const char* path, const vz_corpus* corpus, vz_pairs** out);
VZ_API void vz_pairs_free(vz_pairs* pairs);
VZ_API size_t vz_pairs_count(const vz_pairs* pairs);
VZ_API vz_status vz_pairs_get(const vz_pairs* pairs, size_t index, vz_pair* out);

/* ---- training and embeddings ---- */
VZ_API vz_status vz_train(const vz_pairs* pairs, const vz_corpus* corpus, const vz_config* config,
                          vz_embedding** out);
/* Loss trace of the run that produced the embedding (empty after load without one). */
VZ_API vz_status vz_embedding_loss_trace(const vz_embedding* emb, const double** values, size_t* count);
VZ_API vz_status vz_embedding_save(const vz_embedding* emb, const char* path);
VZ_API vz_status vz_embedding_load(const char* path, vz_embedding** out);
VZ_API void vz_embedding_free(vz_embedding* emb);
VZ_API int vz_embedding_n_objects(const vz_embedding* emb);
VZ_API int vz_embedding_n_timestamps(const vz_embedding* emb);
VZ_API int vz_embedding_dim(const vz_embedding* emb);
VZ_API int vz_embedding_is_temporal(const vz_embedding* emb);
VZ_API vz_status vz_embedding_label_name(const vz_embedding* emb, int32_t label, const char** out);
VZ_API vz_status vz_embedding_label_id(const vz_embedding* emb, const char* name, int32_t* out);
/* Pointer to dim() values of slice t (0 for static tables), valid while emb lives. */
VZ_API vz_status vz_embedding_vector(const vz_embedding* emb, int32_t label, int t, const double** out);
/* Objective id recorded at training time, or "" when unknown. */
VZ_API const char* vz_embedding_objective(const vz_embedding* emb);

/* ---- evaluation ----
 * List-returning calls write up to `cap` entries and set *count to the full
 * length; a short buffer yields VZ_ERR_BUFFER_TOO_SMALL. Pass t = -1 for
 * static tables. */
VZ_API vz_status vz_nearest_neighbors(const vz_embedding* emb, int32_t query, int t, int k, int32_t* labels,
                                      double* similarities, size_t cap, size_t* count);
VZ_API vz_status vz_base_neighbors(const vz_corpus* corpus, int32_t query, int t, int k, int32_t* labels,
                                   double* mean_distances, size_t cap, size_t* count);
/* n_sample = 0 uses every (label, timestamp) where the label occurs. */
VZ_API vz_status vz_hit_at_k(const vz_embedding* emb, const vz_corpus* corpus, int k, const int32_t* sample_labels,
                             const int* sample_ts, size_t n_sample, double* out);
/* `assignment` must hold n_objects entries. */
VZ_API vz_status vz_kmeans_silhouette(const vz_embedding* emb, int k, uint64_t seed, int* assignment,
                                      double* silhouette);
VZ_API vz_status vz_rand_index(const int* a, const int* b, size_t n, double* out);
VZ_API vz_status vz_spearman(const double* a, const double* b, size_t n, double* out);
VZ_API vz_status vz_clustering_consistency(const vz_embedding* emb, const int* categories, size_t n, int k, int t,
                                           double* out);
VZ_API vz_status vz_similarity_series(const vz_embedding* emb, int32_t a, int32_t b, double* out, size_t cap,
                                      size_t* count);
VZ_API vz_status vz_top_pairs(const vz_embedding* emb, int t, int m, vz_similar_pair* out, size_t cap, size_t* count);
VZ_API vz_status vz_narrative_prompt(const vz_embedding* emb, int m_per_t, char* buf, size_t cap, size_t* needed);
/* `xy` receives 2 * n_objects values (x0, y0, x1, y1, ...). */
VZ_API vz_status vz_pca_2d(const vz_embedding* emb, int t, double* xy, size_t cap);
/* `classes` has n_objects entries; negative entries are left out. */
VZ_API vz_status vz_classify_contexts(const vz_embedding* emb, const int* classes, size_t n, uint64_t split_seed,
                                      double train_fraction, double* accuracy);
VZ_API vz_status vz_permutation_baseline(const vz_embedding* emb, const int* classes, size_t n, uint64_t split_seed,
                                         double train_fraction, int n_permutations, uint64_t permutation_seed,
                                         double* accuracy);

#ifdef __cplusplus
}
#endif

#endif /* VIZOBJ_VIZOBJ_H */
