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

// lcp: command-line front end. Talks to the library only through lcproto.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lcproto/lcproto.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Failure {
  lcp_status status;
  std::string message;
};

void check(lcp_status s) {
  if (s != LCP_OK) throw Failure{s, lcp_last_error()};
}

struct UsageError {
  std::string message;
};

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Dataset = std::unique_ptr<lcp_dataset, Deleter<lcp_dataset, lcp_dataset_free>>;
using Store = std::unique_ptr<lcp_store, Deleter<lcp_store, lcp_store_free>>;
using EpisodeH = std::unique_ptr<lcp_episode, Deleter<lcp_episode, lcp_episode_free>>;
using Index = std::unique_ptr<lcp_index, Deleter<lcp_index, lcp_index_free>>;
using Predictions = std::unique_ptr<lcp_predictions, Deleter<lcp_predictions, lcp_predictions_free>>;
using Probe = std::unique_ptr<lcp_probe, Deleter<lcp_probe, lcp_probe_free>>;
using BenchTable = std::unique_ptr<lcp_bench_table, Deleter<lcp_bench_table, lcp_bench_table_free>>;

struct Buffer {
  void* p = nullptr;
  ~Buffer() { lcp_buffer_free(p); }
};

// --data DIR expands to the three files written by `generate`.
struct DataPaths {
  std::string dir;
  std::string manifest;
  std::string vocab;
  std::string store;

  void add_options(CLI::App* app, bool need_store = true) {
    app->add_option("--data", dir, "dataset directory (manifest.jsonl, vocab.txt, embeddings.lcpe)");
    app->add_option("--manifest", manifest, "manifest JSONL (overrides --data)");
    app->add_option("--vocab", vocab, "vocabulary file (overrides --data)");
    if (need_store) app->add_option("--store", store, "embedding store (overrides --data)");
  }
  void resolve(bool need_store = true) {
    auto fill = [&](std::string& field, const char* name) {
      if (field.empty() && !dir.empty()) field = (fs::path(dir) / name).string();
    };
    fill(manifest, "manifest.jsonl");
    fill(vocab, "vocab.txt");
    fill(store, "embeddings.lcpe");
    if (manifest.empty() || vocab.empty() || (need_store && store.empty())) {
      throw UsageError{"give --data or all of --manifest/--vocab/--store"};
    }
  }
  Dataset load_dataset() const {
    lcp_dataset* d = nullptr;
    check(lcp_dataset_read(manifest.c_str(), vocab.c_str(), &d));
    return Dataset(d);
  }
  Store load_store() const { return read_store(store); }

  static Store read_store(const std::string& path) {
    lcp_store* s = nullptr;
    check(lcp_store_read(path.c_str(), &s));
    return Store(s);
  }
};

Probe read_probe(const std::string& path) {
  lcp_probe* p = nullptr;
  check(lcp_probe_read(path.c_str(), &p));
  return Probe(p);
}

void ensure_parent(const std::string& path) {
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

void write_text(const std::string& path, const std::string& text) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Failure{LCP_ERR_IO, "cannot write " + path};
}

std::size_t thread_count(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("LCP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw UsageError{"LCP_THREADS must be a positive integer"};
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

// Sample standard deviation; 0 for a single run.
MeanStd mean_std(const std::vector<double>& v) {
  MeanStd r;
  if (v.empty()) return r;
  for (double x : v) r.mean += x;
  r.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    r.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return r;
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  lcp_synthetic_spec spec{};
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  lcp_dataset* d = nullptr;
  lcp_store* s = nullptr;
  check(lcp_generate_synthetic(&a.spec, &d, &s));
  Dataset dataset(d);
  Store store(s);
  fs::create_directories(a.out);
  const auto dir = fs::path(a.out);
  check(lcp_dataset_write(dataset.get(), (dir / "manifest.jsonl").c_str(), (dir / "vocab.txt").c_str()));
  check(lcp_store_write(store.get(), (dir / "embeddings.lcpe").c_str()));
  std::cout << "wrote " << lcp_dataset_num_items(dataset.get()) << " items, "
            << lcp_dataset_num_labels(dataset.get()) << " labels, dim " << lcp_store_dim(store.get())
            << " to " << a.out << "\n";
  return kExitOk;
}

// ---- sample ---------------------------------------------------------------

struct SampleArgs {
  DataPaths data;
  lcp_sampler_config cfg{};
  std::vector<std::string> support_splits{"train", "valid"};
  std::string out;
};

std::uint32_t split_mask(const std::vector<std::string>& names) {
  std::uint32_t mask = 0;
  for (const auto& n : names) {
    if (n == "train") mask |= 1u << LCP_SPLIT_TRAIN;
    else if (n == "valid") mask |= 1u << LCP_SPLIT_VALID;
    else if (n == "test") mask |= 1u << LCP_SPLIT_TEST;
    else throw UsageError{"unknown split '" + n + "'"};
  }
  return mask;
}

int run_sample(SampleArgs& a) {
  a.data.resolve();
  a.cfg.support_splits = split_mask(a.support_splits);
  const auto dataset = a.data.load_dataset();
  const auto store = a.data.load_store();
  lcp_episode* e = nullptr;
  check(lcp_episode_sample(dataset.get(), store.get(), &a.cfg, &e));
  EpisodeH ep(e);
  const std::string record = lcp_episode_record(ep.get());
  if (a.out.empty()) std::cout << record;
  else write_text(a.out, record);
  std::cerr << "episode: " << lcp_episode_num_labels(ep.get()) << " labels, "
            << lcp_episode_num_support(ep.get()) << " support, " << lcp_episode_num_queries(ep.get())
            << " queries\n";
  return kExitOk;
}

// ---- fsl-eval -------------------------------------------------------------

struct FslArgs {
  DataPaths data;
  std::string context = "pt";
  std::string probe;
  std::string features;
  std::uint32_t k = 3;
  std::uint32_t n_way = 0;
  std::size_t runs = 5;
  std::vector<std::uint64_t> seeds;
  std::optional<std::uint64_t> master_seed;
  std::uint32_t max_labels_per_item = 20;
  unsigned threads = 0;
  std::string json_out;
  std::string csv_out;
  std::string predictions_dir;
};

struct RunResult {
  std::uint64_t seed = 0;
  double macro_f1 = 0.0;
  double micro_f1 = 0.0;
  std::size_t classes = 0;
  std::size_t prototypes = 0;
  std::size_t support = 0;
  std::size_t queries = 0;
  std::size_t skipped_labels = 0;
};

std::vector<std::uint64_t> resolve_seeds(const FslArgs& a) {
  if (!a.seeds.empty()) {
    if (a.master_seed) throw UsageError{"--seeds and --master-seed are exclusive"};
    return a.seeds;
  }
  std::vector<std::uint64_t> out;
  if (a.master_seed) {
    std::mt19937_64 gen(*a.master_seed);
    for (std::size_t i = 0; i < a.runs; ++i) out.push_back(gen());
  } else {
    for (std::size_t i = 0; i < a.runs; ++i) out.push_back(i);
  }
  return out;
}

RunResult fsl_run(const FslArgs& a, const lcp_dataset* dataset, const lcp_store* store,
                  std::uint64_t seed) {
  lcp_sampler_config cfg;
  lcp_sampler_config_default(&cfg);
  cfg.k_shot = a.k;
  cfg.n_way = a.n_way;
  cfg.seed = seed;
  lcp_episode* e = nullptr;
  check(lcp_episode_sample(dataset, store, &cfg, &e));
  EpisodeH ep(e);
  lcp_index* ix = nullptr;
  check(lcp_index_build(ep.get(), a.max_labels_per_item, &ix));
  Index index(ix);
  lcp_predictions* p = nullptr;
  check(lcp_index_classify_episode(index.get(), ep.get(), &p));
  Predictions preds(p);
  lcp_f1_result f1{};
  check(lcp_predictions_f1(preds.get(), &f1, nullptr, nullptr));
  if (!a.predictions_dir.empty()) {
    const auto path = fs::path(a.predictions_dir) / ("predictions_seed" + std::to_string(seed) + ".jsonl");
    check(lcp_predictions_write(preds.get(), path.c_str()));
  }
  RunResult r;
  r.seed = seed;
  r.macro_f1 = f1.macro_f1;
  r.micro_f1 = f1.micro_f1;
  r.classes = lcp_index_num_classes(index.get());
  r.prototypes = lcp_index_num_prototypes(index.get());
  r.support = lcp_episode_num_support(ep.get());
  r.queries = lcp_episode_num_queries(ep.get());
  r.skipped_labels = f1.num_skipped_labels;
  return r;
}

int run_fsl_eval(FslArgs& a) {
  a.data.resolve(a.context != "sft");
  if (a.k == 0) throw UsageError{"--k must be positive"};
  const auto seeds = resolve_seeds(a);
  if (seeds.empty()) throw UsageError{"no runs requested"};

  const auto dataset = a.data.load_dataset();
  Store store;
  if (a.context == "pt") {
    if (!a.probe.empty() || !a.features.empty()) throw UsageError{"pt context takes no --probe/--features"};
    store = a.data.load_store();
  } else if (a.context == "prob") {
    if (a.probe.empty()) throw UsageError{"prob context needs --probe"};
    const auto raw = a.data.load_store();
    const auto probe = read_probe(a.probe);
    lcp_store* f = nullptr;
    check(lcp_probe_features(probe.get(), raw.get(), &f));
    store.reset(f);
  } else if (a.context == "sft") {
    if (a.features.empty()) throw UsageError{"sft context needs --features (an externally produced store)"};
    store = DataPaths::read_store(a.features);
  } else {
    throw UsageError{"--context must be pt, prob or sft"};
  }
  if (!a.predictions_dir.empty()) fs::create_directories(a.predictions_dir);

  std::vector<RunResult> results(seeds.size());
  std::vector<std::optional<Failure>> errors(seeds.size());
  const std::size_t workers = std::min(thread_count(a.threads), seeds.size());
  std::vector<std::thread> pool;
  std::mutex next_mu;
  std::size_t next = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard<std::mutex> lock(next_mu);
          if (next >= seeds.size()) return;
          i = next++;
        }
        try {
          results[i] = fsl_run(a, dataset.get(), store.get(), seeds[i]);
        } catch (const Failure& f) {
          errors[i] = f;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (errors[i]) {
      throw Failure{errors[i]->status, "seed " + std::to_string(seeds[i]) + ": " + errors[i]->message};
    }
  }

  std::vector<double> macro, micro;
  for (const auto& r : results) {
    macro.push_back(r.macro_f1);
    micro.push_back(r.micro_f1);
  }
  const auto ma = mean_std(macro), mi = mean_std(micro);

  std::printf("%-20s %8s %8s %7s %7s %7s %7s\n", "seed", "M-F1", "m-F1", "|L|", "M", "support", "queries");
  for (const auto& r : results) {
    std::printf("%-20llu %8.4f %8.4f %7zu %7zu %7zu %7zu\n", static_cast<unsigned long long>(r.seed),
                r.macro_f1, r.micro_f1, r.classes, r.prototypes, r.support, r.queries);
  }
  std::printf("context %s, K=%u: M-F1 %.4f +- %.4f, m-F1 %.4f +- %.4f\n", a.context.c_str(), a.k,
              ma.mean, ma.std, mi.mean, mi.std);

  if (!a.json_out.empty()) {
    json rec;
    rec["command"] = "fsl-eval";
    rec["config"] = {{"context", a.context},
                     {"manifest", a.data.manifest},
                     {"vocab", a.data.vocab},
                     {"store", a.context == "sft" ? a.features : a.data.store},
                     {"probe", a.probe},
                     {"k", a.k},
                     {"n_way", a.n_way},
                     {"max_labels_per_item", a.max_labels_per_item}};
    rec["seeds"] = seeds;
    json runs = json::array();
    for (const auto& r : results) {
      runs.push_back({{"seed", r.seed},
                      {"macro_f1", r.macro_f1},
                      {"micro_f1", r.micro_f1},
                      {"num_classes", r.classes},
                      {"num_prototypes", r.prototypes},
                      {"support", r.support},
                      {"queries", r.queries},
                      {"skipped_labels", r.skipped_labels}});
    }
    rec["runs"] = runs;
    rec["aggregate"] = {{"macro_f1", {{"mean", ma.mean}, {"std", ma.std}}},
                        {"micro_f1", {{"mean", mi.mean}, {"std", mi.std}}}};
    write_text(a.json_out, rec.dump(2) + "\n");
  }
  if (!a.csv_out.empty()) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "seed,macro_f1,micro_f1,num_classes,num_prototypes,support,queries\n";
    for (const auto& r : results) {
      csv << r.seed << ',' << r.macro_f1 << ',' << r.micro_f1 << ',' << r.classes << ','
          << r.prototypes << ',' << r.support << ',' << r.queries << '\n';
    }
    write_text(a.csv_out, csv.str());
  }
  return kExitOk;
}

// ---- probe-train / probe-features ------------------------------------------

struct ProbeTrainArgs {
  DataPaths data;
  lcp_train_config cfg{};
  std::string out;
  std::string history;
  std::string json_out;
};

int run_probe_train(ProbeTrainArgs& a) {
  a.data.resolve();
  const auto dataset = a.data.load_dataset();
  const auto store = a.data.load_store();
  lcp_probe* p = nullptr;
  lcp_train_summary sum{};
  check(lcp_probe_train(dataset.get(), store.get(), &a.cfg, &p, &sum));
  Probe probe(p);
  ensure_parent(a.out);
  check(lcp_probe_write(probe.get(), a.out.c_str()));

  std::vector<double> tl(sum.epochs_run), vl(sum.epochs_run);
  lcp_probe_history(probe.get(), tl.data(), vl.data(), tl.size());
  if (!a.history.empty()) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "epoch,train_loss,valid_loss\n";
    for (std::size_t i = 0; i < tl.size(); ++i) csv << i + 1 << ',' << tl[i] << ',' << vl[i] << '\n';
    write_text(a.history, csv.str());
  }
  std::printf("epochs %u, best epoch %u, valid BCE %.6f, valid ROC-AUC %.4f, valid mAP %.4f\n",
              sum.epochs_run, sum.best_epoch, sum.best_valid_loss, sum.valid_roc_auc, sum.valid_map);
  if (!a.json_out.empty()) {
    json rec;
    rec["command"] = "probe-train";
    rec["config"] = {{"learning_rate", a.cfg.learning_rate}, {"batch_size", a.cfg.batch_size},
                     {"patience", a.cfg.patience},           {"max_epochs", a.cfg.max_epochs},
                     {"seed", a.cfg.seed}};
    auto nan_null = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
    rec["summary"] = {{"epochs_run", sum.epochs_run},
                      {"best_epoch", sum.best_epoch},
                      {"best_valid_loss", sum.best_valid_loss},
                      {"valid_roc_auc", nan_null(sum.valid_roc_auc)},
                      {"valid_map", nan_null(sum.valid_map)}};
    write_text(a.json_out, rec.dump(2) + "\n");
  }
  return kExitOk;
}

struct ProbeFeaturesArgs {
  std::string store;
  std::string probe;
  std::string out;
};

int run_probe_features(const ProbeFeaturesArgs& a) {
  const auto store = DataPaths::read_store(a.store);
  const auto probe = read_probe(a.probe);
  lcp_store* f = nullptr;
  check(lcp_probe_features(probe.get(), store.get(), &f));
  Store features(f);
  ensure_parent(a.out);
  check(lcp_store_write(features.get(), a.out.c_str()));
  std::cout << "wrote " << lcp_store_count(features.get()) << " feature vectors of dim "
            << lcp_store_dim(features.get()) << " to " << a.out << "\n";
  return kExitOk;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  lcp_bench_config cfg{};
  std::vector<std::uint32_t> labels;
  std::string out;
  bool quiet = false;
};

int run_bench(BenchArgs& a) {
  if (!a.labels.empty()) {
    a.cfg.label_counts = a.labels.data();
    a.cfg.num_label_counts = a.labels.size();
  }
  a.cfg.verbose = a.quiet ? 0 : 1;
  lcp_bench_table* t = nullptr;
  check(lcp_bench_run(&a.cfg, &t));
  BenchTable table(t);
  ensure_parent(a.out);
  check(lcp_bench_table_write_csv(table.get(), a.out.c_str()));
  std::printf("%6s %10s %9s %8s %12s %12s %9s\n", "labels", "|L|", "M", "M/|L|", "t_orig_ms", "t_opt_ms",
              "speedup");
  for (std::size_t i = 0; i < lcp_bench_table_rows(table.get()); ++i) {
    lcp_bench_row r{};
    check(lcp_bench_table_row(table.get(), i, &r));
    std::printf("%6u %10.1f %9.1f %8.4f %12.5f %12.5f %9.2f\n", r.num_labels, r.mean_classes,
                r.mean_prototypes, r.mean_prototypes / r.mean_classes, r.t_orig_ms, r.t_opt_ms,
                r.speedup);
  }
  return kExitOk;
}

// ---- metrics --------------------------------------------------------------

struct MetricsArgs {
  std::string predictions;
  std::string scores;
  std::string vocab;
  std::string json_out;
};

json per_label_json(const std::vector<double>& values, const std::vector<std::uint8_t>& included,
                    const std::vector<std::string>& names) {
  json out = json::object();
  for (std::size_t l = 0; l < values.size(); ++l) {
    out[names[l]] = included[l] ? json(values[l]) : json(nullptr);
  }
  return out;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{LCP_ERR_IO, "cannot open " + path};
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

int run_metrics(const MetricsArgs& a) {
  if (a.predictions.empty() == a.scores.empty()) {
    throw UsageError{"give exactly one of --predictions or --scores"};
  }
  const auto names = read_lines(a.vocab);
  json rec;
  rec["command"] = "metrics";
  auto skipped = [&](const std::vector<std::uint8_t>& inc) {
    json s = json::array();
    for (std::size_t l = 0; l < inc.size(); ++l)
      if (!inc[l]) s.push_back(names[l]);
    return s;
  };
  if (!a.predictions.empty()) {
    Buffer pred, truth;
    std::size_t items = 0, labels = 0;
    check(lcp_load_predictions_file(a.predictions.c_str(), a.vocab.c_str(),
                                    reinterpret_cast<std::uint8_t**>(&pred.p),
                                    reinterpret_cast<std::uint8_t**>(&truth.p), &items, &labels));
    lcp_f1_result f1{};
    std::vector<double> per(labels);
    std::vector<std::uint8_t> inc(labels);
    check(lcp_metrics_f1(static_cast<std::uint8_t*>(pred.p), static_cast<std::uint8_t*>(truth.p), items,
                         labels, &f1, per.data(), inc.data()));
    rec["items"] = items;
    rec["metrics"] = {
        {{"metric", "macro_f1"}, {"value", f1.macro_f1}, {"per_label", per_label_json(per, inc, names)},
         {"skipped", skipped(inc)}},
        {{"metric", "micro_f1"}, {"value", f1.micro_f1}}};
    std::printf("items %zu: macro-F1 %.4f, micro-F1 %.4f\n", items, f1.macro_f1, f1.micro_f1);
  } else {
    Buffer scores, truth;
    std::size_t items = 0, labels = 0;
    check(lcp_load_scores_file(a.scores.c_str(), a.vocab.c_str(), reinterpret_cast<double**>(&scores.p),
                               reinterpret_cast<std::uint8_t**>(&truth.p), &items, &labels));
    const auto* s = static_cast<const double*>(scores.p);
    const auto* t = static_cast<const std::uint8_t*>(truth.p);
    double auc = 0.0, map = 0.0;
    std::vector<double> auc_per(labels), map_per(labels);
    std::vector<std::uint8_t> auc_inc(labels), map_inc(labels);
    check(lcp_metrics_roc_auc(s, t, items, labels, &auc, auc_per.data(), auc_inc.data()));
    check(lcp_metrics_map(s, t, items, labels, &map, map_per.data(), map_inc.data()));
    rec["items"] = items;
    rec["metrics"] = {{{"metric", "roc_auc"},
                       {"value", auc},
                       {"per_label", per_label_json(auc_per, auc_inc, names)},
                       {"skipped", skipped(auc_inc)}},
                      {{"metric", "map"},
                       {"value", map},
                       {"per_label", per_label_json(map_per, map_inc, names)},
                       {"skipped", skipped(map_inc)}}};
    std::printf("items %zu: ROC-AUC %.4f, mAP %.4f\n", items, auc, map);
  }
  if (!a.json_out.empty()) write_text(a.json_out, rec.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lcproto: multi-label few-shot classification with label-combination prototypes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lcp_version()));

  GenerateArgs gen;
  lcp_synthetic_spec_default(&gen.spec);
  auto* g = app.add_subcommand("generate", "write a seeded synthetic dataset");
  g->add_option("--labels", gen.spec.num_labels, "number of labels")->capture_default_str();
  g->add_option("--items-per-split", gen.spec.items_per_split)->capture_default_str();
  g->add_option("--lambda", gen.spec.lambda, "Poisson rate of labels per item")->capture_default_str();
  g->add_option("--max-labels-per-item", gen.spec.max_labels_per_item)->capture_default_str();
  g->add_option("--dim", gen.spec.dim)->capture_default_str();
  g->add_option("--centroid-scale", gen.spec.centroid_scale)->capture_default_str();
  g->add_option("--noise", gen.spec.noise)->capture_default_str();
  g->add_option("--min-carriers", gen.spec.min_carriers)->capture_default_str();
  g->add_option("--seed", gen.spec.seed)->capture_default_str();
  g->add_option("--out", gen.out, "output directory")->required();

  SampleArgs smp;
  lcp_sampler_config_default(&smp.cfg);
  auto* s = app.add_subcommand("sample", "sample one episode and print its record");
  smp.data.add_options(s);
  s->add_option("--n-way", smp.cfg.n_way, "labels per episode, 0 for all")->capture_default_str();
  s->add_option("--k", smp.cfg.k_shot, "shots per label")->capture_default_str();
  s->add_option("--seed", smp.cfg.seed)->capture_default_str();
  s->add_option("--support-splits", smp.support_splits)->delimiter(',')->capture_default_str();
  s->add_option("--out", smp.out, "record file (default stdout)");

  FslArgs fsl;
  auto* f = app.add_subcommand("fsl-eval", "seeded few-shot evaluation runs");
  fsl.data.add_options(f);
  f->add_option("--context", fsl.context, "feature context: pt, prob or sft")->capture_default_str();
  f->add_option("--probe", fsl.probe, "probe parameters (prob context)");
  f->add_option("--features", fsl.features, "precomputed feature store (sft context)");
  f->add_option("--k", fsl.k, "shots per label")->capture_default_str();
  f->add_option("--n-way", fsl.n_way, "labels per episode, 0 for all")->capture_default_str();
  f->add_option("--runs", fsl.runs)->capture_default_str();
  f->add_option("--seeds", fsl.seeds, "explicit seeds (default 0..runs-1)")->delimiter(',');
  f->add_option("--master-seed", fsl.master_seed, "derive run seeds from one seed");
  f->add_option("--max-labels-per-item", fsl.max_labels_per_item)->capture_default_str();
  f->add_option("--threads", fsl.threads, "worker threads (default LCP_THREADS or all cores)");
  f->add_option("--json", fsl.json_out, "run record JSON");
  f->add_option("--csv", fsl.csv_out, "per-run CSV");
  f->add_option("--predictions-dir", fsl.predictions_dir, "write per-seed predictions JSONL");

  ProbeTrainArgs pt;
  lcp_train_config_default(&pt.cfg);
  auto* p = app.add_subcommand("probe-train", "train the MLP probe on the train split");
  pt.data.add_options(p);
  p->add_option("--lr", pt.cfg.learning_rate)->capture_default_str();
  p->add_option("--batch-size", pt.cfg.batch_size)->capture_default_str();
  p->add_option("--patience", pt.cfg.patience)->capture_default_str();
  p->add_option("--max-epochs", pt.cfg.max_epochs)->capture_default_str();
  p->add_option("--seed", pt.cfg.seed)->capture_default_str();
  p->add_option("--out", pt.out, "parameter file")->required();
  p->add_option("--history", pt.history, "per-epoch loss CSV");
  p->add_option("--json", pt.json_out, "summary JSON");

  ProbeFeaturesArgs pf;
  auto* pfc = app.add_subcommand("probe-features", "write hidden-layer features as a store");
  pfc->add_option("--store", pf.store, "input embedding store")->required();
  pfc->add_option("--probe", pf.probe, "probe parameters")->required();
  pfc->add_option("--out", pf.out, "output store")->required();

  BenchArgs bench;
  lcp_bench_config_default(&bench.cfg);
  auto* b = app.add_subcommand("bench", "label-count scalability sweep");
  b->add_option("--labels", bench.labels, "label counts (default 20,30,40,50,60)")->delimiter(',');
  b->add_option("--episodes", bench.cfg.episodes_per_point)->capture_default_str();
  b->add_option("--queries", bench.cfg.queries_per_episode, "timed queries per episode, 0 for all")
      ->capture_default_str();
  b->add_option("--warmup", bench.cfg.warmup_queries)->capture_default_str();
  b->add_option("--k", bench.cfg.k_shot)->capture_default_str();
  b->add_option("--seed", bench.cfg.seed)->capture_default_str();
  b->add_option("--lambda", bench.cfg.data.lambda)->capture_default_str();
  b->add_option("--items-per-split", bench.cfg.data.items_per_split)->capture_default_str();
  b->add_option("--dim", bench.cfg.data.dim)->capture_default_str();
  b->add_option("--out", bench.out, "CSV output")->required();
  b->add_flag("--quiet", bench.quiet, "no progress on stderr");

  MetricsArgs met;
  auto* m = app.add_subcommand("metrics", "score a predictions or scores JSONL file");
  m->add_option("--predictions", met.predictions, "predictions JSONL (F1)");
  m->add_option("--scores", met.scores, "scores JSONL (ROC-AUC, mAP)");
  m->add_option("--vocab", met.vocab, "vocabulary file")->required();
  m->add_option("--json", met.json_out, "metrics record JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (g->parsed()) return run_generate(gen);
    if (s->parsed()) return run_sample(smp);
    if (f->parsed()) return run_fsl_eval(fsl);
    if (p->parsed()) return run_probe_train(pt);
    if (pfc->parsed()) return run_probe_features(pf);
    if (b->parsed()) return run_bench(bench);
    if (m->parsed()) return run_metrics(met);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.message << "\n";
    return kExitUsage;
  } catch (const Failure& e) {
    std::cerr << "error: " << lcp_status_name(e.status) << ": " << e.message << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
