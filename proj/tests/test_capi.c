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

/* Exercises the shared library through the plain C header only. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "lcproto/lcproto.h"

static int failures = 0;

#define CHECK(cond)                                                    \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: CHECK(%s) failed: %s\n", __FILE__, __LINE__, #cond, \
              lcp_last_error());                                       \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static char dir[512];

static const char* path_in(const char* name) {
  static char buf[4][600];
  static int slot = 0;
  slot = (slot + 1) % 4;
  snprintf(buf[slot], sizeof buf[slot], "%s/%s", dir, name);
  return buf[slot];
}

static void test_errors(void) {
  lcp_store* s = NULL;
  CHECK(lcp_store_read(path_in("missing.lcpe"), &s) == LCP_ERR_IO);
  CHECK(s == NULL);
  CHECK(strlen(lcp_last_error()) > 0);
  CHECK(lcp_store_read(NULL, &s) == LCP_ERR_INVALID_ARGUMENT);
  CHECK(strcmp(lcp_status_name(LCP_ERR_CORRUPT_RECORD), "CorruptRecord") == 0);
  CHECK(strlen(lcp_version()) > 0);
  lcp_store_free(NULL);
  lcp_dataset_free(NULL);

  /* truncated store */
  FILE* f = fopen(path_in("trunc.lcpe"), "wb");
  const unsigned char bytes[] = {'L', 'C', 'P', 'E', 1, 0, 2, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 'a', 0, 0};
  fwrite(bytes, 1, sizeof bytes, f);
  fclose(f);
  CHECK(lcp_store_read(path_in("trunc.lcpe"), &s) == LCP_ERR_CORRUPT_RECORD);
  CHECK(lcp_last_error_offset() > 0 && lcp_last_error_offset() <= sizeof bytes);

  f = fopen(path_in("magic.lcpe"), "wb");
  fwrite("NOPE", 1, 4, f);
  fclose(f);
  CHECK(lcp_store_read(path_in("magic.lcpe"), &s) == LCP_ERR_BAD_MAGIC);

  lcp_synthetic_spec spec;
  lcp_synthetic_spec_default(&spec);
  spec.num_labels = 50;
  spec.items_per_split = 10;
  spec.max_labels_per_item = 2;
  lcp_dataset* d = NULL;
  CHECK(lcp_generate_synthetic(&spec, &d, &s) == LCP_ERR_SPEC_INFEASIBLE);
}

static void test_pipeline(void) {
  lcp_synthetic_spec spec;
  lcp_synthetic_spec_default(&spec);
  CHECK(spec.num_labels == 20 && spec.dim == 32);
  spec.num_labels = 6;
  spec.items_per_split = 40;
  spec.dim = 8;
  lcp_dataset* d = NULL;
  lcp_store* s = NULL;
  CHECK(lcp_generate_synthetic(&spec, &d, &s) == LCP_OK);
  if (!d || !s) return;
  CHECK(lcp_dataset_num_items(d) == 120);
  CHECK(lcp_dataset_num_labels(d) == 6);
  CHECK(lcp_store_count(s) == 120);
  CHECK(lcp_store_dim(s) == 8);
  CHECK(lcp_dataset_label_name(d, 0) != NULL);
  CHECK(lcp_dataset_label_name(d, 6) == NULL);

  CHECK(lcp_store_write(s, path_in("e.lcpe")) == LCP_OK);
  CHECK(lcp_dataset_write(d, path_in("m.jsonl"), path_in("v.txt")) == LCP_OK);
  lcp_store* s2 = NULL;
  lcp_dataset* d2 = NULL;
  CHECK(lcp_store_read(path_in("e.lcpe"), &s2) == LCP_OK);
  CHECK(lcp_dataset_read(path_in("m.jsonl"), path_in("v.txt"), &d2) == LCP_OK);
  CHECK(lcp_store_count(s2) == 120);
  CHECK(lcp_dataset_num_items(d2) == 120);

  lcp_sampler_config sc;
  lcp_sampler_config_default(&sc);
  CHECK(sc.k_shot == 3 && sc.n_way == 0);
  sc.seed = 4;
  lcp_episode* ep = NULL;
  CHECK(lcp_episode_sample(d2, s2, &sc, &ep) == LCP_OK);
  if (ep) {
    CHECK(lcp_episode_validate(ep) == 0);
    CHECK(lcp_episode_num_labels(ep) == 6);
    CHECK(lcp_episode_num_queries(ep) > 0);
    CHECK(strncmp(lcp_episode_record(ep), "# lcproto episode v1", 20) == 0);

    lcp_index* idx = NULL;
    CHECK(lcp_index_build(ep, 20, &idx) == LCP_OK);
    CHECK(lcp_index_num_prototypes(idx) <= lcp_index_num_classes(idx));
    lcp_predictions* fast = NULL;
    lcp_predictions* slow = NULL;
    CHECK(lcp_index_classify_episode(idx, ep, &fast) == LCP_OK);
    CHECK(lcp_classify_episode_original(ep, 20, &slow) == LCP_OK);
    if (fast && slow) {
      const size_t n = lcp_predictions_count(fast);
      CHECK(n == lcp_episode_num_queries(ep));
      CHECK(n == lcp_predictions_count(slow));
      for (size_t i = 0; i < n; ++i) {
        uint32_t a[32], b[32];
        const size_t na = lcp_predictions_labels(fast, i, a, 32);
        const size_t nb = lcp_predictions_labels(slow, i, b, 32);
        CHECK(na > 0 && na == nb && memcmp(a, b, na * sizeof a[0]) == 0);
        CHECK(strcmp(lcp_predictions_query_id(fast, i), lcp_predictions_query_id(slow, i)) == 0);
      }
      lcp_f1_result r;
      double per_label[6];
      uint8_t included[6];
      CHECK(lcp_predictions_f1(fast, &r, per_label, included) == LCP_OK);
      CHECK(r.micro_f1 >= 0.0 && r.micro_f1 <= 1.0);
      CHECK(r.num_items == n);
      CHECK(lcp_predictions_write(fast, path_in("pred.jsonl")) == LCP_OK);

      uint8_t *pred = NULL, *truth = NULL;
      size_t items = 0, labels = 0;
      CHECK(lcp_load_predictions_file(path_in("pred.jsonl"), path_in("v.txt"), &pred, &truth,
                                      &items, &labels) == LCP_OK);
      CHECK(items == n && labels == 6);
      lcp_f1_result r2;
      CHECK(lcp_metrics_f1(pred, truth, items, labels, &r2, NULL, NULL) == LCP_OK);
      CHECK(r2.micro_f1 == r.micro_f1 && r2.macro_f1 == r.macro_f1);
      lcp_buffer_free(pred);
      lcp_buffer_free(truth);
    }
    lcp_predictions_free(fast);
    lcp_predictions_free(slow);
    lcp_index_free(idx);
  }
  lcp_episode_free(ep);

  lcp_train_config tc;
  lcp_train_config_default(&tc);
  CHECK(tc.batch_size == 16 && tc.patience == 10 && tc.max_epochs == 200);
  tc.max_epochs = 5;
  lcp_probe* p = NULL;
  lcp_train_summary sum;
  CHECK(lcp_probe_train(d2, s2, &tc, &p, &sum) == LCP_OK);
  if (p) {
    CHECK(sum.epochs_run <= 5 && sum.best_epoch >= 1);
    CHECK(lcp_probe_hidden(p) == 512);
    CHECK(lcp_probe_input_dim(p) == 8);
    CHECK(lcp_probe_num_labels(p) == 6);
    double tl[8], vl[8];
    CHECK(lcp_probe_history(p, tl, vl, 8) == sum.epochs_run);
    CHECK(lcp_probe_write(p, path_in("p.lcpp")) == LCP_OK);
    lcp_probe* p2 = NULL;
    CHECK(lcp_probe_read(path_in("p.lcpp"), &p2) == LCP_OK);
    lcp_store* feats = NULL;
    CHECK(lcp_probe_features(p2, s2, &feats) == LCP_OK);
    CHECK(lcp_store_dim(feats) == 512);
    CHECK(lcp_store_count(feats) == 120);
    double auc = 0, map = 0;
    CHECK(lcp_probe_evaluate(p2, d2, s2, LCP_SPLIT_VALID, &auc, &map) == LCP_OK);
    CHECK(auc > 0.0 && auc <= 1.0 && map > 0.0 && map <= 1.0);
    CHECK(lcp_probe_write_scores(p2, d2, s2, LCP_SPLIT_TEST, path_in("s.jsonl")) == LCP_OK);
    double* scores = NULL;
    uint8_t* truth = NULL;
    size_t items = 0, labels = 0;
    CHECK(lcp_load_scores_file(path_in("s.jsonl"), path_in("v.txt"), &scores, &truth, &items,
                               &labels) == LCP_OK);
    double macro = 0;
    CHECK(lcp_metrics_roc_auc(scores, truth, items, labels, &macro, NULL, NULL) == LCP_OK);
    CHECK(macro > 0.0 && macro <= 1.0);
    CHECK(lcp_metrics_map(scores, truth, items, labels, &macro, NULL, NULL) == LCP_OK);
    lcp_buffer_free(scores);
    lcp_buffer_free(truth);
    lcp_store_free(feats);
    lcp_probe_free(p2);
  }
  lcp_probe_free(p);

  lcp_store_free(s);
  lcp_store_free(s2);
  lcp_dataset_free(d);
  lcp_dataset_free(d2);
}

static void test_metrics(void) {
  const double scores[] = {0.9, 0.4, 0.6};
  const uint8_t truth[] = {1, 0, 1};
  double macro = 0;
  CHECK(lcp_metrics_roc_auc(scores, truth, 3, 1, &macro, NULL, NULL) == LCP_OK);
  CHECK(macro == 1.0);
  const uint8_t none[] = {0, 0, 0};
  CHECK(lcp_metrics_roc_auc(scores, none, 3, 1, &macro, NULL, NULL) == LCP_ERR_NO_VALID_LABELS);
  CHECK(lcp_metrics_f1(none, none, 0, 1, NULL, NULL, NULL) != LCP_OK);
}

static void test_bench(void) {
  lcp_bench_config bc;
  lcp_bench_config_default(&bc);
  CHECK(bc.label_counts == NULL && bc.episodes_per_point == 3);
  const uint32_t counts[] = {4, 6};
  bc.label_counts = counts;
  bc.num_label_counts = 2;
  bc.episodes_per_point = 1;
  bc.queries_per_episode = 10;
  bc.warmup_queries = 1;
  bc.data.items_per_split = 40;
  bc.data.dim = 8;
  bc.verbose = 0;
  lcp_bench_table* t = NULL;
  CHECK(lcp_bench_run(&bc, &t) == LCP_OK);
  CHECK(lcp_bench_table_rows(t) == 2);
  lcp_bench_row row;
  CHECK(lcp_bench_table_row(t, 1, &row) == LCP_OK);
  CHECK(row.num_labels == 6 && row.mean_prototypes <= row.mean_classes);
  CHECK(lcp_bench_table_row(t, 2, &row) == LCP_ERR_INVALID_ARGUMENT);
  CHECK(lcp_bench_table_write_csv(t, path_in("bench.csv")) == LCP_OK);
  lcp_bench_table_free(t);
}

int main(void) {
  const char* tmp = getenv("TMPDIR");
  snprintf(dir, sizeof dir, "%s/lcproto_capi_XXXXXX", tmp ? tmp : "/tmp");
  if (!mkdtemp(dir)) {
    perror("mkdtemp");
    return 1;
  }
  test_errors();
  test_pipeline();
  test_metrics();
  test_bench();
  char cmd[600];
  snprintf(cmd, sizeof cmd, "rm -rf '%s'", dir);
  if (system(cmd) != 0) fprintf(stderr, "could not remove %s\n", dir);
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
