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

#include "lcproto/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "lcproto/data_io.hpp"
#include "lcproto/error.hpp"
#include "lcproto/lcp_engine.hpp"
#include "lcproto/random.hpp"
#include "lcproto/sampler.hpp"

namespace lcp {
namespace {

constexpr const char* kCsvHeader =
    "num_labels,L,M,t_orig_ms,t_opt_ms,speedup,L_std,M_std,t_orig_std_ms,t_opt_std_ms,"
    "t_orig_median_ms,t_opt_median_ms,episodes,queries";

struct Summary {
  double mean = 0.0;
  double std = 0.0;
  double median = 0.0;
};

Summary summarize(std::vector<double> v) {
  Summary s;
  if (v.empty()) return s;
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  double sq = 0.0;
  for (double x : v) sq += (x - s.mean) * (x - s.mean);
  s.std = v.size() > 1 ? std::sqrt(sq / static_cast<double>(v.size() - 1)) : 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  s.median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  return s;
}

double elapsed_ms(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

}  // namespace

void BenchConfig::validate() const {
  if (label_counts.empty()) throw Error(ErrorCode::kInvalidArgument, "no label counts to sweep");
  for (std::size_t i = 0; i < label_counts.size(); ++i) {
    if (label_counts[i] == 0) throw Error(ErrorCode::kInvalidArgument, "label counts must be positive");
    if (i > 0 && label_counts[i] <= label_counts[i - 1]) {
      throw Error(ErrorCode::kInvalidArgument, "label counts must be strictly ascending");
    }
  }
  if (episodes_per_point == 0 || k_shot == 0) {
    throw Error(ErrorCode::kInvalidArgument, "episodes and k_shot must be positive");
  }
}

std::vector<BenchRow> run_benchmark(const BenchConfig& config, const BenchLogger& log) {
  config.validate();
  const std::size_t max_labels = config.label_counts.back();

  struct PointAccum {
    std::vector<double> classes, prototypes, t_orig, t_opt;
  };
  std::vector<PointAccum> acc(config.label_counts.size());

  for (std::size_t e = 0; e < config.episodes_per_point; ++e) {
    SyntheticSpec spec = config.data;
    spec.num_labels = max_labels;
    spec.min_carriers = std::max(spec.min_carriers, config.k_shot);
    spec.seed = mix_seed(config.seed, e);
    const auto corpus = generate_synthetic(spec);

    for (std::size_t p = 0; p < config.label_counts.size(); ++p) {
      const std::size_t n = config.label_counts[p];
      const DatasetManifest manifest =
          n == max_labels ? corpus.manifest : project_top_labels(corpus.manifest, n);

      SamplerConfig sc;
      sc.k_shot = config.k_shot;
      sc.seed = mix_seed(config.seed, 1000003ULL * (e + 1) + n);
      const Episode ep = sample_episode(manifest, corpus.store, sc);

      const auto original = build_prototypes_original(ep.support, config.max_labels_per_item);
      const auto index = build_prototype_index(ep.support, config.max_labels_per_item);
      acc[p].classes.push_back(static_cast<double>(index.total_classes));
      acc[p].prototypes.push_back(static_cast<double>(index.num_prototypes()));

      std::size_t limit = ep.queries.size();
      if (config.queries_per_episode > 0) {
        limit = std::min(limit, config.warmup_queries + config.queries_per_episode);
      }
      for (std::size_t q = 0; q < limit; ++q) {
        const auto& query = ep.queries[q];
        const auto t0 = std::chrono::steady_clock::now();
        const Prediction a = classify_original(query, original);
        const auto t1 = std::chrono::steady_clock::now();
        const Prediction b = classify(query, index);
        const auto t2 = std::chrono::steady_clock::now();
        if (a.labels != b.labels) {
          throw Error(ErrorCode::kEquivalenceViolation,
                      "labels=" + std::to_string(n) + " episode=" + std::to_string(e) +
                          " query=" + query.id + ": original " + format_labels(a.labels) +
                          " vs optimized " + format_labels(b.labels));
        }
        if (q < config.warmup_queries) continue;
        acc[p].t_orig.push_back(elapsed_ms(t0, t1));
        acc[p].t_opt.push_back(elapsed_ms(t1, t2));
      }
      if (log) {
        std::ostringstream os;
        os << "labels=" << n << " episode=" << e << " support=" << ep.support.size()
           << " |L|=" << index.total_classes << " M=" << index.num_prototypes()
           << " queries=" << (limit > config.warmup_queries ? limit - config.warmup_queries : 0);
        log(os.str());
      }
    }
  }

  std::vector<BenchRow> rows;
  for (std::size_t p = 0; p < config.label_counts.size(); ++p) {
    const auto& a = acc[p];
    if (a.t_orig.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no queries left to time at " + std::to_string(config.label_counts[p]) +
                      " labels; lower warmup_queries");
    }
    const auto cls = summarize(a.classes), proto = summarize(a.prototypes);
    const auto orig = summarize(a.t_orig), opt = summarize(a.t_opt);
    BenchRow r;
    r.num_labels = config.label_counts[p];
    r.mean_classes = cls.mean;
    r.std_classes = cls.std;
    r.mean_prototypes = proto.mean;
    r.std_prototypes = proto.std;
    r.t_orig_ms = orig.mean;
    r.t_orig_std_ms = orig.std;
    r.t_orig_median_ms = orig.median;
    r.t_opt_ms = opt.mean;
    r.t_opt_std_ms = opt.std;
    r.t_opt_median_ms = opt.median;
    r.speedup = opt.mean > 0.0 ? orig.mean / opt.mean : 0.0;
    r.episodes = a.classes.size();
    r.timed_queries = a.t_orig.size();
    rows.push_back(r);
  }
  return rows;
}

std::string format_bench_csv(std::vector<BenchRow> rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const BenchRow& a, const BenchRow& b) { return a.num_labels < b.num_labels; });
  std::string out = kCsvHeader;
  out += '\n';
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += ',';
    out += buf;
  };
  for (const auto& r : rows) {
    out += std::to_string(r.num_labels);
    num(r.mean_classes);
    num(r.mean_prototypes);
    num(r.t_orig_ms);
    num(r.t_opt_ms);
    num(r.speedup);
    num(r.std_classes);
    num(r.std_prototypes);
    num(r.t_orig_std_ms);
    num(r.t_opt_std_ms);
    num(r.t_orig_median_ms);
    num(r.t_opt_median_ms);
    out += ',' + std::to_string(r.episodes);
    out += ',' + std::to_string(r.timed_queries);
    out += '\n';
  }
  return out;
}

std::vector<BenchRow> parse_bench_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(ErrorCode::kBadManifest, "benchmark CSV has an unexpected header");
  }
  std::vector<BenchRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 14) throw Error(ErrorCode::kBadManifest, "benchmark CSV row has wrong arity");
    try {
      BenchRow r;
      r.num_labels = std::stoull(cells[0]);
      r.mean_classes = std::stod(cells[1]);
      r.mean_prototypes = std::stod(cells[2]);
      r.t_orig_ms = std::stod(cells[3]);
      r.t_opt_ms = std::stod(cells[4]);
      r.speedup = std::stod(cells[5]);
      r.std_classes = std::stod(cells[6]);
      r.std_prototypes = std::stod(cells[7]);
      r.t_orig_std_ms = std::stod(cells[8]);
      r.t_opt_std_ms = std::stod(cells[9]);
      r.t_orig_median_ms = std::stod(cells[10]);
      r.t_opt_median_ms = std::stod(cells[11]);
      r.episodes = std::stoull(cells[12]);
      r.timed_queries = std::stoull(cells[13]);
      rows.push_back(r);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kBadManifest, "benchmark CSV has a non-numeric cell");
    }
  }
  return rows;
}

void emit_bench_table(const std::vector<BenchRow>& rows, const std::filesystem::path& path) {
  if (rows.empty()) throw Error(ErrorCode::kInvalidArgument, "no benchmark rows to write");
  write_file_text(path, format_bench_csv(rows));
}

}  // namespace lcp
