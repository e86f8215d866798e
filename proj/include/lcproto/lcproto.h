/*
 * Copyright 2026 The lcproto Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
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
#ifndef LCPROTO_LCPROTO_H_
#define LCPROTO_LCPROTO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LCP_BUILDING_LIBRARY)
#define LCP_API __declspec(dllexport)
#else
#define LCP_API __declspec(dllimport)
#endif
#else
#define LCP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/*
 * Every function returns an lcp_status. On failure the calling thread's
 * lcp_last_error() holds a human-readable message; output parameters are left
 * untouched. Handles are opaque and owned by the caller, who releases them
 * with the matching *_free function (NULL is accepted). A handle may be read
 * from several threads at once; mutation never happens after creation.
 */
typedef enum lcp_status {
  LCP_OK = 0,
  LCP_ERR_INVALID_ARGUMENT = 1,
  LCP_ERR_VOCABULARY = 2,
  LCP_ERR_EMPTY_SUPPORT = 3,
  LCP_ERR_LABEL_CAP_EXCEEDED = 4,
  LCP_ERR_CLASS_NOT_IN_L = 5,
  LCP_ERR_ZERO_NORM_VECTOR = 6,
  LCP_ERR_EMPTY_INDEX = 7,
  LCP_ERR_DIMENSION_MISMATCH = 8,
  LCP_ERR_INSUFFICIENT_ITEMS = 9,
  LCP_ERR_MISSING_EMBEDDING = 10,
  LCP_ERR_NOT_ENOUGH_ELIGIBLE_LABELS = 11,
  LCP_ERR_ATTEMPT_LIMIT = 12,
  LCP_ERR_EMPTY_DATASET = 13,
  LCP_ERR_EMPTY_INPUT = 14,
  LCP_ERR_NO_VALID_LABELS = 15,
  LCP_ERR_BAD_MAGIC = 16,
  LCP_ERR_UNSUPPORTED_VERSION = 17,
  LCP_ERR_CORRUPT_RECORD = 18,
  LCP_ERR_NON_FINITE_VALUE = 19,
  LCP_ERR_BAD_MANIFEST = 20,
  LCP_ERR_SPEC_INFEASIBLE = 21,
  LCP_ERR_IO = 22,
  LCP_ERR_EQUIVALENCE_VIOLATION = 23,
  LCP_ERR_INTERNAL = 99
} lcp_status;

typedef enum lcp_split { LCP_SPLIT_TRAIN = 0, LCP_SPLIT_VALID = 1, LCP_SPLIT_TEST = 2 } lcp_split;

typedef struct lcp_dataset lcp_dataset;         /* manifest + vocabulary */
typedef struct lcp_store lcp_store;             /* id -> embedding */
typedef struct lcp_episode lcp_episode;
typedef struct lcp_index lcp_index;             /* deduplicated prototypes */
typedef struct lcp_predictions lcp_predictions;
typedef struct lcp_probe lcp_probe;
typedef struct lcp_bench_table lcp_bench_table;

LCP_API const char* lcp_version(void);
LCP_API const char* lcp_status_name(lcp_status status);
LCP_API const char* lcp_last_error(void);
/* Byte offset of the last CorruptRecord failure on this thread. */
LCP_API uint64_t lcp_last_error_offset(void);

/* ---- data: stores and manifests ---------------------------------------- */

LCP_API lcp_status lcp_store_read(const char* path, lcp_store** out);
LCP_API lcp_status lcp_store_write(const lcp_store* store, const char* path);
LCP_API void lcp_store_free(lcp_store* store);
LCP_API size_t lcp_store_count(const lcp_store* store);
LCP_API size_t lcp_store_dim(const lcp_store* store);

LCP_API lcp_status lcp_dataset_read(const char* manifest_path, const char* vocab_path,
                                    lcp_dataset** out);
LCP_API lcp_status lcp_dataset_write(const lcp_dataset* dataset, const char* manifest_path,
                                     const char* vocab_path);
LCP_API void lcp_dataset_free(lcp_dataset* dataset);
LCP_API size_t lcp_dataset_num_items(const lcp_dataset* dataset);
LCP_API size_t lcp_dataset_num_labels(const lcp_dataset* dataset);
/* Pointer stays valid for the dataset's lifetime; NULL when out of range. */
LCP_API const char* lcp_dataset_label_name(const lcp_dataset* dataset, size_t label);

typedef struct lcp_synthetic_spec {
  uint32_t num_labels;
  uint32_t items_per_split;
  double lambda;
  uint32_t max_labels_per_item;
  uint32_t dim;
  double centroid_scale;
  double noise;
  uint64_t seed;
  uint32_t min_carriers;
  uint32_t max_attempts;
} lcp_synthetic_spec;

LCP_API void lcp_synthetic_spec_default(lcp_synthetic_spec* spec);
LCP_API lcp_status lcp_generate_synthetic(const lcp_synthetic_spec* spec, lcp_dataset** dataset,
                                          lcp_store** store);

/* ---- episodes and the prototype engine --------------------------------- */

typedef struct lcp_sampler_config {
  uint32_t n_way; /* 0: whole vocabulary */
  uint32_t k_shot;
  uint64_t seed;
  uint32_t support_splits; /* bit mask: 1 << lcp_split */
  uint32_t max_support_attempts;
} lcp_sampler_config;

LCP_API void lcp_sampler_config_default(lcp_sampler_config* config);
LCP_API lcp_status lcp_episode_sample(const lcp_dataset* dataset, const lcp_store* store,
                                      const lcp_sampler_config* config, lcp_episode** out);
LCP_API void lcp_episode_free(lcp_episode* episode);
LCP_API size_t lcp_episode_num_support(const lcp_episode* episode);
LCP_API size_t lcp_episode_num_queries(const lcp_episode* episode);
LCP_API size_t lcp_episode_num_labels(const lcp_episode* episode);
/* Text audit record; valid for the episode's lifetime. */
LCP_API const char* lcp_episode_record(const lcp_episode* episode);
/* Number of validation violations (0 for a valid episode). */
LCP_API size_t lcp_episode_validate(const lcp_episode* episode);

LCP_API lcp_status lcp_index_build(const lcp_episode* episode, uint32_t max_labels_per_item,
                                   lcp_index** out);
LCP_API void lcp_index_free(lcp_index* index);
LCP_API size_t lcp_index_num_classes(const lcp_index* index);
LCP_API size_t lcp_index_num_prototypes(const lcp_index* index);

/* Classifies every query of the episode against the index. */
LCP_API lcp_status lcp_index_classify_episode(const lcp_index* index, const lcp_episode* episode,
                                              lcp_predictions** out);
/* Same queries against every LC-class prototype (the reference method). */
LCP_API lcp_status lcp_classify_episode_original(const lcp_episode* episode,
                                                 uint32_t max_labels_per_item,
                                                 lcp_predictions** out);
LCP_API void lcp_predictions_free(lcp_predictions* predictions);
LCP_API size_t lcp_predictions_count(const lcp_predictions* predictions);
LCP_API const char* lcp_predictions_query_id(const lcp_predictions* predictions, size_t i);
/* Fills `labels` with up to `capacity` episode label ids; returns the count. */
LCP_API size_t lcp_predictions_labels(const lcp_predictions* predictions, size_t i,
                                      uint32_t* labels, size_t capacity);
LCP_API double lcp_predictions_distance(const lcp_predictions* predictions, size_t i);
LCP_API lcp_status lcp_predictions_write(const lcp_predictions* predictions, const char* path);

typedef struct lcp_f1_result {
  double macro_f1;
  double micro_f1;
  uint64_t num_items;
  uint64_t num_skipped_labels;
} lcp_f1_result;

/* per_label (nullable) receives num_labels F1 values; included (nullable)
 * receives 1 for labels counted in the macro mean. */
LCP_API lcp_status lcp_predictions_f1(const lcp_predictions* predictions, lcp_f1_result* out,
                                      double* per_label, uint8_t* included);

/* ---- metrics on caller-owned matrices (row-major items x labels) ------- */

LCP_API lcp_status lcp_metrics_f1(const uint8_t* predicted, const uint8_t* truth, size_t items,
                                  size_t labels, lcp_f1_result* out, double* per_label,
                                  uint8_t* included);
LCP_API lcp_status lcp_metrics_roc_auc(const double* scores, const uint8_t* truth, size_t items,
                                       size_t labels, double* macro, double* per_label,
                                       uint8_t* included);
LCP_API lcp_status lcp_metrics_map(const double* scores, const uint8_t* truth, size_t items,
                                   size_t labels, double* macro, double* per_label,
                                   uint8_t* included);

/* Loads prediction / score JSONL files (vocabulary order defines columns) into
 * caller-released buffers (lcp_buffer_free). */
LCP_API lcp_status lcp_load_predictions_file(const char* path, const char* vocab_path,
                                             uint8_t** predicted, uint8_t** truth, size_t* items,
                                             size_t* labels);
LCP_API lcp_status lcp_load_scores_file(const char* path, const char* vocab_path, double** scores,
                                        uint8_t** truth, size_t* items, size_t* labels);
LCP_API void lcp_buffer_free(void* buffer);

/* ---- probe head -------------------------------------------------------- */

typedef struct lcp_train_config {
  double learning_rate;
  uint32_t batch_size;
  uint32_t patience;
  uint32_t max_epochs;
  double beta1;
  double beta2;
  double epsilon;
  uint64_t seed;
} lcp_train_config;

typedef struct lcp_train_summary {
  uint32_t epochs_run;
  uint32_t best_epoch;
  double best_valid_loss;
  double valid_roc_auc;
  double valid_map;
} lcp_train_summary;

LCP_API void lcp_train_config_default(lcp_train_config* config);
/* Trains on the train split, early-stops on the valid split. */
LCP_API lcp_status lcp_probe_train(const lcp_dataset* dataset, const lcp_store* store,
                                   const lcp_train_config* config, lcp_probe** out,
                                   lcp_train_summary* summary);
/* Per-epoch history: writes up to `capacity` (train_loss, valid_loss) pairs. */
LCP_API size_t lcp_probe_history(const lcp_probe* probe, double* train_loss, double* valid_loss,
                                 size_t capacity);
LCP_API lcp_status lcp_probe_read(const char* path, lcp_probe** out);
LCP_API lcp_status lcp_probe_write(const lcp_probe* probe, const char* path);
LCP_API void lcp_probe_free(lcp_probe* probe);
LCP_API size_t lcp_probe_input_dim(const lcp_probe* probe);
LCP_API size_t lcp_probe_hidden(const lcp_probe* probe);
LCP_API size_t lcp_probe_num_labels(const lcp_probe* probe);
/* Hidden-layer features for every embedding in the store. */
LCP_API lcp_status lcp_probe_features(const lcp_probe* probe, const lcp_store* store,
                                      lcp_store** out);
/* Sigmoid scores for one split, written as a scores JSONL file. */
LCP_API lcp_status lcp_probe_write_scores(const lcp_probe* probe, const lcp_dataset* dataset,
                                          const lcp_store* store, lcp_split split,
                                          const char* path);
LCP_API lcp_status lcp_probe_evaluate(const lcp_probe* probe, const lcp_dataset* dataset,
                                      const lcp_store* store, lcp_split split, double* roc_auc,
                                      double* map);

/* ---- scalability benchmark --------------------------------------------- */

typedef struct lcp_bench_config {
  const uint32_t* label_counts;
  size_t num_label_counts;
  uint32_t episodes_per_point;
  uint32_t queries_per_episode;
  uint32_t k_shot;
  uint32_t warmup_queries;
  uint64_t seed;
  lcp_synthetic_spec data;
  int verbose; /* progress lines on stderr */
} lcp_bench_config;

typedef struct lcp_bench_row {
  uint32_t num_labels;
  double mean_classes;
  double std_classes;
  double mean_prototypes;
  double std_prototypes;
  double t_orig_ms;
  double t_orig_std_ms;
  double t_orig_median_ms;
  double t_opt_ms;
  double t_opt_std_ms;
  double t_opt_median_ms;
  double speedup;
  uint64_t episodes;
  uint64_t timed_queries;
} lcp_bench_row;

/* label_counts is left NULL by default, meaning 20,30,40,50,60. */
LCP_API void lcp_bench_config_default(lcp_bench_config* config);
LCP_API lcp_status lcp_bench_run(const lcp_bench_config* config, lcp_bench_table** out);
LCP_API void lcp_bench_table_free(lcp_bench_table* table);
LCP_API size_t lcp_bench_table_rows(const lcp_bench_table* table);
LCP_API lcp_status lcp_bench_table_row(const lcp_bench_table* table, size_t i, lcp_bench_row* out);
LCP_API lcp_status lcp_bench_table_write_csv(const lcp_bench_table* table, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* LCPROTO_LCPROTO_H_ */
