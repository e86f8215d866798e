// Copyright 2026 The lcproto Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lcproto/lcproto.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <limits>
#include <new>
#include <string>

#include "lcproto/bench.hpp"
#include "lcproto/data_io.hpp"
#include "lcproto/error.hpp"
#include "lcproto/lcp_engine.hpp"
#include "lcproto/metrics.hpp"
#include "lcproto/probe.hpp"
#include "lcproto/sampler.hpp"
#include "lcproto/synthetic.hpp"

struct lcp_dataset {
  lcp::DatasetManifest manifest;
};
struct lcp_store {
  lcp::EmbeddingStore store;
};
struct lcp_episode {
  lcp::Episode episode;
  std::uint64_t seed = 0;
  std::string record;
};
struct lcp_index {
  lcp::PrototypeIndex index;
};
struct lcp_predictions {
  std::vector<lcp::Prediction> predictions;
  // Queries without embeddings; only ids and truths are kept.
  std::vector<lcp::QueryItem> queries;
  lcp::LabelVocabulary vocabulary;
};
struct lcp_probe {
  lcp::ProbeParams params;
  std::vector<lcp::EpochStats> history;
};
struct lcp_bench_table {
  std::vector<lcp::BenchRow> rows;
};

namespace {

static_assert(static_cast<int>(lcp::ErrorCode::kInvalidArgument) == LCP_ERR_INVALID_ARGUMENT);
static_assert(static_cast<int>(lcp::ErrorCode::kCorruptRecord) == LCP_ERR_CORRUPT_RECORD);
static_assert(static_cast<int>(lcp::ErrorCode::kEquivalenceViolation) ==
              LCP_ERR_EQUIVALENCE_VIOLATION);

thread_local std::string g_last_error;
thread_local std::uint64_t g_last_offset = 0;

lcp_status fail(lcp_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
lcp_status guarded(F&& f) {
  try {
    f();
    return LCP_OK;
  } catch (const lcp::CorruptRecordError& e) {
    g_last_offset = e.offset();
    return fail(LCP_ERR_CORRUPT_RECORD, e.what());
  } catch (const lcp::Error& e) {
    return fail(static_cast<lcp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LCP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LCP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LCP_ERR_INTERNAL, "unknown failure");
  }
}

#define LCP_REQUIRE(cond)                                                        \
  do {                                                                           \
    if (!(cond)) return fail(LCP_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

lcp::Split to_split(lcp_split s) {
  switch (s) {
    case LCP_SPLIT_TRAIN: return lcp::Split::kTrain;
    case LCP_SPLIT_VALID: return lcp::Split::kValid;
    case LCP_SPLIT_TEST: return lcp::Split::kTest;
  }
  throw lcp::Error(lcp::ErrorCode::kInvalidArgument, "unknown split");
}

lcp::SyntheticSpec to_spec(const lcp_synthetic_spec& c) {
  lcp::SyntheticSpec s;
  s.num_labels = c.num_labels;
  s.items_per_split = c.items_per_split;
  s.lambda = c.lambda;
  s.max_labels_per_item = c.max_labels_per_item;
  s.dim = c.dim;
  s.centroid_scale = c.centroid_scale;
  s.noise = c.noise;
  s.seed = c.seed;
  s.min_carriers = c.min_carriers;
  s.max_attempts = c.max_attempts;
  return s;
}

lcp_synthetic_spec from_spec(const lcp::SyntheticSpec& s) {
  lcp_synthetic_spec c{};
  c.num_labels = static_cast<std::uint32_t>(s.num_labels);
  c.items_per_split = static_cast<std::uint32_t>(s.items_per_split);
  c.lambda = s.lambda;
  c.max_labels_per_item = static_cast<std::uint32_t>(s.max_labels_per_item);
  c.dim = static_cast<std::uint32_t>(s.dim);
  c.centroid_scale = s.centroid_scale;
  c.noise = s.noise;
  c.seed = s.seed;
  c.min_carriers = static_cast<std::uint32_t>(s.min_carriers);
  c.max_attempts = static_cast<std::uint32_t>(s.max_attempts);
  return c;
}

lcp::TrainConfig to_train_config(const lcp_train_config& c) {
  lcp::TrainConfig t;
  t.learning_rate = c.learning_rate;
  t.batch_size = c.batch_size;
  t.patience = c.patience;
  t.max_epochs = c.max_epochs;
  t.beta1 = c.beta1;
  t.beta2 = c.beta2;
  t.epsilon = c.epsilon;
  t.seed = c.seed;
  return t;
}

lcp::ScoreMatrix score_matrix(const double* scores, const std::uint8_t* truth, size_t items,
                              size_t labels) {
  lcp::ScoreMatrix m;
  m.items = items;
  m.labels = labels;
  m.scores.assign(scores, scores + items * labels);
  m.truth.assign(truth, truth + items * labels);
  return m;
}

void write_ranking(const lcp::RankingReport& r, double* macro, double* per_label,
                   std::uint8_t* included) {
  *macro = r.macro;
  for (std::size_t l = 0; l < r.per_label.size(); ++l) {
    if (per_label) per_label[l] = r.per_label[l];
    if (included) included[l] = std::isnan(r.per_label[l]) ? 0 : 1;
  }
}

void write_f1(const lcp::F1Report& r, std::size_t items, lcp_f1_result* out, double* per_label,
              std::uint8_t* included) {
  out->macro_f1 = r.macro_f1;
  out->micro_f1 = r.micro_f1;
  out->num_items = items;
  out->num_skipped_labels = r.skipped.size();
  for (std::size_t l = 0; l < r.per_label.size(); ++l) {
    if (per_label) per_label[l] = r.per_label[l];
    if (included) included[l] = 1;
  }
  if (included)
    for (auto id : r.skipped) included[id] = 0;
}

template <typename T>
T* copy_to_malloc(const std::vector<T>& v) {
  T* p = static_cast<T*>(std::malloc(std::max<std::size_t>(1, v.size()) * sizeof(T)));
  if (!p) throw std::bad_alloc();
  if (!v.empty()) std::memcpy(p, v.data(), v.size() * sizeof(T));
  return p;
}

lcp_predictions* make_predictions(std::vector<lcp::Prediction> preds, const lcp::Episode& ep) {
  auto* out = new lcp_predictions{std::move(preds), {}, ep.vocabulary};
  out->queries.reserve(ep.queries.size());
  for (const auto& q : ep.queries) out->queries.push_back({q.id, {}, q.truth});
  return out;
}

}  // namespace

extern "C" {

const char* lcp_version(void) { return "1.0.0"; }

const char* lcp_status_name(lcp_status status) {
  if (status == LCP_OK) return "Ok";
  if (status == LCP_ERR_INTERNAL) return "InternalError";
  if (status >= LCP_ERR_INVALID_ARGUMENT && status <= LCP_ERR_EQUIVALENCE_VIOLATION) {
    return lcp::error_code_name(static_cast<lcp::ErrorCode>(status));
  }
  return "Unknown";
}

const char* lcp_last_error(void) { return g_last_error.c_str(); }
uint64_t lcp_last_error_offset(void) { return g_last_offset; }

lcp_status lcp_store_read(const char* path, lcp_store** out) {
  LCP_REQUIRE(path && out);
  return guarded([&] { *out = new lcp_store{lcp::read_store(path)}; });
}

lcp_status lcp_store_write(const lcp_store* store, const char* path) {
  LCP_REQUIRE(store && path);
  return guarded([&] { lcp::write_store(store->store, path); });
}

void lcp_store_free(lcp_store* store) { delete store; }
size_t lcp_store_count(const lcp_store* store) { return store ? store->store.size() : 0; }
size_t lcp_store_dim(const lcp_store* store) { return store ? store->store.dim() : 0; }

lcp_status lcp_dataset_read(const char* manifest_path, const char* vocab_path, lcp_dataset** out) {
  LCP_REQUIRE(manifest_path && vocab_path && out);
  return guarded([&] { *out = new lcp_dataset{lcp::read_manifest(manifest_path, vocab_path)}; });
}

lcp_status lcp_dataset_write(const lcp_dataset* dataset, const char* manifest_path,
                             const char* vocab_path) {
  LCP_REQUIRE(dataset && manifest_path && vocab_path);
  return guarded([&] { lcp::write_manifest(dataset->manifest, manifest_path, vocab_path); });
}

void lcp_dataset_free(lcp_dataset* dataset) { delete dataset; }
size_t lcp_dataset_num_items(const lcp_dataset* d) { return d ? d->manifest.items.size() : 0; }
size_t lcp_dataset_num_labels(const lcp_dataset* d) { return d ? d->manifest.vocabulary.size() : 0; }

const char* lcp_dataset_label_name(const lcp_dataset* d, size_t label) {
  if (!d || label >= d->manifest.vocabulary.size()) return nullptr;
  return d->manifest.vocabulary.name(static_cast<lcp::LabelId>(label)).c_str();
}

void lcp_synthetic_spec_default(lcp_synthetic_spec* spec) {
  if (spec) *spec = from_spec(lcp::SyntheticSpec{});
}

lcp_status lcp_generate_synthetic(const lcp_synthetic_spec* spec, lcp_dataset** dataset,
                                  lcp_store** store) {
  LCP_REQUIRE(spec && dataset && store);
  return guarded([&] {
    auto data = lcp::generate_synthetic(to_spec(*spec));
    auto* d = new lcp_dataset{std::move(data.manifest)};
    *store = new lcp_store{std::move(data.store)};
    *dataset = d;
  });
}

void lcp_sampler_config_default(lcp_sampler_config* config) {
  if (!config) return;
  const lcp::SamplerConfig d;
  config->n_way = 0;
  config->k_shot = static_cast<std::uint32_t>(d.k_shot);
  config->seed = d.seed;
  config->support_splits = (1U << LCP_SPLIT_TRAIN) | (1U << LCP_SPLIT_VALID);
  config->max_support_attempts = static_cast<std::uint32_t>(d.max_support_attempts);
}

lcp_status lcp_episode_sample(const lcp_dataset* dataset, const lcp_store* store,
                              const lcp_sampler_config* config, lcp_episode** out) {
  LCP_REQUIRE(dataset && store && config && out);
  return guarded([&] {
    lcp::SamplerConfig sc;
    sc.n_way = config->n_way;
    sc.k_shot = config->k_shot;
    sc.seed = config->seed;
    sc.max_support_attempts = config->max_support_attempts;
    sc.support_splits.clear();
    for (auto s : {LCP_SPLIT_TRAIN, LCP_SPLIT_VALID, LCP_SPLIT_TEST}) {
      if (config->support_splits & (1U << s)) sc.support_splits.push_back(to_split(s));
    }
    auto ep = lcp::sample_episode(dataset->manifest, store->store, sc);
    auto* h = new lcp_episode{std::move(ep), config->seed, {}};
    h->record = lcp::episode_record(h->episode, h->seed);
    *out = h;
  });
}

void lcp_episode_free(lcp_episode* episode) { delete episode; }
size_t lcp_episode_num_support(const lcp_episode* e) { return e ? e->episode.support.size() : 0; }
size_t lcp_episode_num_queries(const lcp_episode* e) { return e ? e->episode.queries.size() : 0; }
size_t lcp_episode_num_labels(const lcp_episode* e) { return e ? e->episode.vocabulary.size() : 0; }
const char* lcp_episode_record(const lcp_episode* e) { return e ? e->record.c_str() : ""; }
size_t lcp_episode_validate(const lcp_episode* e) {
  return e ? lcp::validate_episode(e->episode).size() : 0;
}

lcp_status lcp_index_build(const lcp_episode* episode, uint32_t max_labels_per_item,
                           lcp_index** out) {
  LCP_REQUIRE(episode && out);
  return guarded([&] {
    *out = new lcp_index{lcp::build_prototype_index(episode->episode.support, max_labels_per_item)};
  });
}

void lcp_index_free(lcp_index* index) { delete index; }
size_t lcp_index_num_classes(const lcp_index* i) { return i ? i->index.total_classes : 0; }
size_t lcp_index_num_prototypes(const lcp_index* i) { return i ? i->index.num_prototypes() : 0; }

lcp_status lcp_index_classify_episode(const lcp_index* index, const lcp_episode* episode,
                                      lcp_predictions** out) {
  LCP_REQUIRE(index && episode && out);
  return guarded([&] {
    std::vector<lcp::Prediction> preds;
    preds.reserve(episode->episode.queries.size());
    for (const auto& q : episode->episode.queries) preds.push_back(lcp::classify(q, index->index));
    *out = make_predictions(std::move(preds), episode->episode);
  });
}

lcp_status lcp_classify_episode_original(const lcp_episode* episode, uint32_t max_labels_per_item,
                                         lcp_predictions** out) {
  LCP_REQUIRE(episode && out);
  return guarded([&] {
    const auto protos = lcp::build_prototypes_original(episode->episode.support, max_labels_per_item);
    std::vector<lcp::Prediction> preds;
    preds.reserve(episode->episode.queries.size());
    for (const auto& q : episode->episode.queries) preds.push_back(lcp::classify_original(q, protos));
    *out = make_predictions(std::move(preds), episode->episode);
  });
}

void lcp_predictions_free(lcp_predictions* p) { delete p; }
size_t lcp_predictions_count(const lcp_predictions* p) { return p ? p->predictions.size() : 0; }

const char* lcp_predictions_query_id(const lcp_predictions* p, size_t i) {
  if (!p || i >= p->predictions.size()) return nullptr;
  return p->predictions[i].query_id.c_str();
}

size_t lcp_predictions_labels(const lcp_predictions* p, size_t i, uint32_t* labels,
                              size_t capacity) {
  if (!p || i >= p->predictions.size()) return 0;
  size_t n = 0;
  p->predictions[i].labels.for_each([&](lcp::LabelId id) {
    if (labels && n < capacity) labels[n] = id;
    ++n;
  });
  return n;
}

double lcp_predictions_distance(const lcp_predictions* p, size_t i) {
  if (!p || i >= p->predictions.size()) return std::numeric_limits<double>::quiet_NaN();
  return p->predictions[i].distance;
}

lcp_status lcp_predictions_write(const lcp_predictions* p, const char* path) {
  LCP_REQUIRE(p && path);
  return guarded([&] {
    lcp::write_file_text(path, lcp::encode_predictions(p->predictions, p->queries, p->vocabulary));
  });
}

lcp_status lcp_predictions_f1(const lcp_predictions* p, lcp_f1_result* out, double* per_label,
                              uint8_t* included) {
  LCP_REQUIRE(p && out);
  return guarded([&] {
    std::vector<lcp::LabelSetPair> pairs;
    for (std::size_t i = 0; i < p->predictions.size(); ++i) {
      pairs.emplace_back(p->predictions[i].labels, p->queries[i].truth.value_or(lcp::LabelSet{}));
    }
    const auto r = lcp::f1_scores(pairs, p->vocabulary.size());
    write_f1(r, pairs.size(), out, per_label, included);
  });
}

lcp_status lcp_metrics_f1(const uint8_t* predicted, const uint8_t* truth, size_t items,
                          size_t labels, lcp_f1_result* out, double* per_label, uint8_t* included) {
  LCP_REQUIRE(predicted && truth && out);
  return guarded([&] {
    if (labels == 0 || labels > lcp::kMaxLabels) {
      throw lcp::Error(lcp::ErrorCode::kInvalidArgument, "label count out of range");
    }
    std::vector<lcp::LabelSetPair> pairs(items);
    for (std::size_t i = 0; i < items; ++i) {
      for (std::size_t l = 0; l < labels; ++l) {
        if (predicted[i * labels + l]) pairs[i].first.insert(static_cast<lcp::LabelId>(l));
        if (truth[i * labels + l]) pairs[i].second.insert(static_cast<lcp::LabelId>(l));
      }
    }
    write_f1(lcp::f1_scores(pairs, labels), items, out, per_label, included);
  });
}

lcp_status lcp_metrics_roc_auc(const double* scores, const uint8_t* truth, size_t items,
                               size_t labels, double* macro, double* per_label,
                               uint8_t* included) {
  LCP_REQUIRE(scores && truth && macro);
  return guarded([&] {
    write_ranking(lcp::roc_auc(score_matrix(scores, truth, items, labels)), macro, per_label,
                  included);
  });
}

lcp_status lcp_metrics_map(const double* scores, const uint8_t* truth, size_t items, size_t labels,
                           double* macro, double* per_label, uint8_t* included) {
  LCP_REQUIRE(scores && truth && macro);
  return guarded([&] {
    write_ranking(lcp::mean_average_precision(score_matrix(scores, truth, items, labels)), macro,
                  per_label, included);
  });
}

lcp_status lcp_load_predictions_file(const char* path, const char* vocab_path, uint8_t** predicted,
                                     uint8_t** truth, size_t* items, size_t* labels) {
  LCP_REQUIRE(path && vocab_path && predicted && truth && items && labels);
  return guarded([&] {
    const auto vocab = lcp::decode_vocabulary(lcp::read_file_text(vocab_path));
    const auto pairs = lcp::decode_predictions(lcp::read_file_text(path), vocab);
    const std::size_t n = vocab.size();
    std::vector<std::uint8_t> p(pairs.size() * n, 0), t(pairs.size() * n, 0);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      pairs[i].first.for_each([&](lcp::LabelId id) { p[i * n + id] = 1; });
      pairs[i].second.for_each([&](lcp::LabelId id) { t[i * n + id] = 1; });
    }
    std::uint8_t* pp = copy_to_malloc(p);
    std::uint8_t* tt = nullptr;
    try {
      tt = copy_to_malloc(t);
    } catch (...) {
      std::free(pp);
      throw;
    }
    *predicted = pp;
    *truth = tt;
    *items = pairs.size();
    *labels = n;
  });
}

lcp_status lcp_load_scores_file(const char* path, const char* vocab_path, double** scores,
                                uint8_t** truth, size_t* items, size_t* labels) {
  LCP_REQUIRE(path && vocab_path && scores && truth && items && labels);
  return guarded([&] {
    const auto vocab = lcp::decode_vocabulary(lcp::read_file_text(vocab_path));
    const auto m = lcp::decode_scores(lcp::read_file_text(path), vocab);
    double* s = copy_to_malloc(m.scores);
    std::uint8_t* t = nullptr;
    try {
      t = copy_to_malloc(m.truth);
    } catch (...) {
      std::free(s);
      throw;
    }
    *scores = s;
    *truth = t;
    *items = m.items;
    *labels = m.labels;
  });
}

void lcp_buffer_free(void* buffer) { std::free(buffer); }

void lcp_train_config_default(lcp_train_config* config) {
  if (!config) return;
  const lcp::TrainConfig d;
  config->learning_rate = d.learning_rate;
  config->batch_size = static_cast<std::uint32_t>(d.batch_size);
  config->patience = static_cast<std::uint32_t>(d.patience);
  config->max_epochs = static_cast<std::uint32_t>(d.max_epochs);
  config->beta1 = d.beta1;
  config->beta2 = d.beta2;
  config->epsilon = d.epsilon;
  config->seed = d.seed;
}

lcp_status lcp_probe_train(const lcp_dataset* dataset, const lcp_store* store,
                           const lcp_train_config* config, lcp_probe** out,
                           lcp_train_summary* summary) {
  LCP_REQUIRE(dataset && store && config && out);
  return guarded([&] {
    const auto train = lcp::make_probe_batch(dataset->manifest, store->store, lcp::Split::kTrain);
    const auto valid = lcp::make_probe_batch(dataset->manifest, store->store, lcp::Split::kValid);
    auto result = lcp::train_probe(train, valid, to_train_config(*config));
    if (summary) {
      summary->epochs_run = static_cast<std::uint32_t>(result.history.size());
      summary->best_epoch = static_cast<std::uint32_t>(result.best_epoch);
      summary->best_valid_loss = result.best_valid_loss;
      lcp::ScoreMatrix m;
      m.items = valid.size();
      m.labels = valid.labels;
      m.scores = lcp::probe_scores(valid, result.params);
      for (double t : valid.targets) m.truth.push_back(t > 0.5 ? 1 : 0);
      const double nan = std::numeric_limits<double>::quiet_NaN();
      try {
        summary->valid_roc_auc = lcp::roc_auc(m).macro;
      } catch (const lcp::Error&) {
        summary->valid_roc_auc = nan;
      }
      try {
        summary->valid_map = lcp::mean_average_precision(m).macro;
      } catch (const lcp::Error&) {
        summary->valid_map = nan;
      }
    }
    *out = new lcp_probe{std::move(result.params), std::move(result.history)};
  });
}

size_t lcp_probe_history(const lcp_probe* probe, double* train_loss, double* valid_loss,
                         size_t capacity) {
  if (!probe) return 0;
  for (std::size_t i = 0; i < probe->history.size() && i < capacity; ++i) {
    if (train_loss) train_loss[i] = probe->history[i].train_loss;
    if (valid_loss) valid_loss[i] = probe->history[i].valid_loss;
  }
  return probe->history.size();
}

lcp_status lcp_probe_read(const char* path, lcp_probe** out) {
  LCP_REQUIRE(path && out);
  return guarded([&] { *out = new lcp_probe{lcp::read_params(path), {}}; });
}

lcp_status lcp_probe_write(const lcp_probe* probe, const char* path) {
  LCP_REQUIRE(probe && path);
  return guarded([&] { lcp::write_params(probe->params, path); });
}

void lcp_probe_free(lcp_probe* probe) { delete probe; }
size_t lcp_probe_input_dim(const lcp_probe* p) { return p ? p->params.input_dim() : 0; }
size_t lcp_probe_hidden(const lcp_probe* p) { return p ? p->params.hidden() : 0; }
size_t lcp_probe_num_labels(const lcp_probe* p) { return p ? p->params.labels() : 0; }

lcp_status lcp_probe_features(const lcp_probe* probe, const lcp_store* store, lcp_store** out) {
  LCP_REQUIRE(probe && store && out);
  return guarded([&] { *out = new lcp_store{lcp::extract_feature_store(store->store, probe->params)}; });
}

lcp_status lcp_probe_write_scores(const lcp_probe* probe, const lcp_dataset* dataset,
                                  const lcp_store* store, lcp_split split, const char* path) {
  LCP_REQUIRE(probe && dataset && store && path);
  return guarded([&] {
    const auto s = to_split(split);
    const auto batch = lcp::make_probe_batch(dataset->manifest, store->store, s);
    if (batch.labels != probe->params.labels()) {
      throw lcp::Error(lcp::ErrorCode::kDimensionMismatch,
                       "probe label count does not match the vocabulary");
    }
    lcp::ScoreMatrix m;
    m.items = batch.size();
    m.labels = batch.labels;
    m.scores = lcp::probe_scores(batch, probe->params);
    for (double t : batch.targets) m.truth.push_back(t > 0.5 ? 1 : 0);
    std::vector<std::string> ids;
    for (const auto& item : dataset->manifest.items)
      if (item.split == s) ids.push_back(item.id);
    lcp::write_file_text(path, lcp::encode_scores(m, ids, dataset->manifest.vocabulary));
  });
}

lcp_status lcp_probe_evaluate(const lcp_probe* probe, const lcp_dataset* dataset,
                              const lcp_store* store, lcp_split split, double* roc_auc,
                              double* map) {
  LCP_REQUIRE(probe && dataset && store && roc_auc && map);
  return guarded([&] {
    const auto batch = lcp::make_probe_batch(dataset->manifest, store->store, to_split(split));
    if (batch.labels != probe->params.labels()) {
      throw lcp::Error(lcp::ErrorCode::kDimensionMismatch,
                       "probe label count does not match the vocabulary");
    }
    lcp::ScoreMatrix m;
    m.items = batch.size();
    m.labels = batch.labels;
    m.scores = lcp::probe_scores(batch, probe->params);
    for (double t : batch.targets) m.truth.push_back(t > 0.5 ? 1 : 0);
    const double auc = lcp::roc_auc(m).macro;
    const double ap = lcp::mean_average_precision(m).macro;
    *roc_auc = auc;
    *map = ap;
  });
}

void lcp_bench_config_default(lcp_bench_config* config) {
  if (!config) return;
  const lcp::BenchConfig d;
  config->label_counts = nullptr;
  config->num_label_counts = 0;
  config->episodes_per_point = static_cast<std::uint32_t>(d.episodes_per_point);
  config->queries_per_episode = static_cast<std::uint32_t>(d.queries_per_episode);
  config->k_shot = static_cast<std::uint32_t>(d.k_shot);
  config->warmup_queries = static_cast<std::uint32_t>(d.warmup_queries);
  config->seed = d.seed;
  config->data = from_spec(d.data);
  config->verbose = 0;
}

lcp_status lcp_bench_run(const lcp_bench_config* config, lcp_bench_table** out) {
  LCP_REQUIRE(config && out);
  return guarded([&] {
    lcp::BenchConfig bc;
    if (config->label_counts && config->num_label_counts > 0) {
      bc.label_counts.assign(config->label_counts, config->label_counts + config->num_label_counts);
    }
    bc.episodes_per_point = config->episodes_per_point;
    bc.queries_per_episode = config->queries_per_episode;
    bc.k_shot = config->k_shot;
    bc.warmup_queries = config->warmup_queries;
    bc.seed = config->seed;
    bc.data = to_spec(config->data);
    lcp::BenchLogger log;
    if (config->verbose) log = [](const std::string& line) { std::cerr << line << '\n'; };
    *out = new lcp_bench_table{lcp::run_benchmark(bc, log)};
  });
}

void lcp_bench_table_free(lcp_bench_table* table) { delete table; }
size_t lcp_bench_table_rows(const lcp_bench_table* t) { return t ? t->rows.size() : 0; }

lcp_status lcp_bench_table_row(const lcp_bench_table* table, size_t i, lcp_bench_row* out) {
  LCP_REQUIRE(table && out);
  if (i >= table->rows.size()) return fail(LCP_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& r = table->rows[i];
  out->num_labels = static_cast<std::uint32_t>(r.num_labels);
  out->mean_classes = r.mean_classes;
  out->std_classes = r.std_classes;
  out->mean_prototypes = r.mean_prototypes;
  out->std_prototypes = r.std_prototypes;
  out->t_orig_ms = r.t_orig_ms;
  out->t_orig_std_ms = r.t_orig_std_ms;
  out->t_orig_median_ms = r.t_orig_median_ms;
  out->t_opt_ms = r.t_opt_ms;
  out->t_opt_std_ms = r.t_opt_std_ms;
  out->t_opt_median_ms = r.t_opt_median_ms;
  out->speedup = r.speedup;
  out->episodes = r.episodes;
  out->timed_queries = r.timed_queries;
  return LCP_OK;
}

lcp_status lcp_bench_table_write_csv(const lcp_bench_table* table, const char* path) {
  LCP_REQUIRE(table && path);
  return guarded([&] { lcp::emit_bench_table(table->rows, path); });
}

}  // extern "C"
