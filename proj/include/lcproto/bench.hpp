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

#pragma once

// Scalability sweep: for each label count, time nearest-prototype inference
// with every LC-class prototype against the deduplicated index.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "lcproto/synthetic.hpp"

namespace lcp {

struct BenchConfig {
  std::vector<std::size_t> label_counts{20, 30, 40, 50, 60};
  std::size_t episodes_per_point = 3;
  // 0 times every query of the episode.
  std::size_t queries_per_episode = 100;
  std::size_t k_shot = 3;
  std::size_t warmup_queries = 10;
  std::size_t max_labels_per_item = 20;
  std::uint64_t seed = 0;
  // num_labels and seed are overridden per episode; the corpus is generated
  // at the largest label count and projected onto each sweep point.
  SyntheticSpec data = default_data();

  static SyntheticSpec default_data() {
    SyntheticSpec s;
    s.items_per_split = 400;
    s.lambda = 3.0;
    s.max_labels_per_item = 10;
    s.dim = 64;
    return s;
  }

  void validate() const;
};

struct BenchRow {
  std::size_t num_labels = 0;
  double mean_classes = 0.0;
  double std_classes = 0.0;
  double mean_prototypes = 0.0;
  double std_prototypes = 0.0;
  double t_orig_ms = 0.0;
  double t_orig_std_ms = 0.0;
  double t_orig_median_ms = 0.0;
  double t_opt_ms = 0.0;
  double t_opt_std_ms = 0.0;
  double t_opt_median_ms = 0.0;
  double speedup = 0.0;
  std::size_t episodes = 0;
  std::size_t timed_queries = 0;
};

using BenchLogger = std::function<void(const std::string&)>;

// Throws Error(kEquivalenceViolation) the moment the two classifiers disagree
// on any timed or warmup query.
std::vector<BenchRow> run_benchmark(const BenchConfig& config, const BenchLogger& log = {});

// Rows sorted by num_labels; header first. Numbers use %.17g.
std::string format_bench_csv(std::vector<BenchRow> rows);
std::vector<BenchRow> parse_bench_csv(const std::string& text);
void emit_bench_table(const std::vector<BenchRow>& rows, const std::filesystem::path& path);

}  // namespace lcp
