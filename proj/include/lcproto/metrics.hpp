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

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lcproto/labels.hpp"

namespace lcp {

struct LabelCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

struct ConfusionCounts {
  std::vector<LabelCounts> per_label;
  LabelCounts total;
};

struct F1Report {
  double macro_f1 = 0.0;
  double micro_f1 = 0.0;
  std::vector<double> per_label;
  // Labels without a positive in the truth; left out of the macro mean.
  std::vector<LabelId> skipped;
  ConfusionCounts counts;
};

// (prediction, truth) pairs.
using LabelSetPair = std::pair<LabelSet, LabelSet>;

ConfusionCounts confusion_counts(std::span<const LabelSetPair> predictions, std::size_t num_labels);

// F1 = 2tp / (2tp + fp + fn), 0 when the denominator is 0.
double f1_from_counts(const LabelCounts& c);

F1Report f1_scores(std::span<const LabelSetPair> predictions, std::size_t num_labels);

// Items x labels, row-major, with a parallel 0/1 truth matrix.
struct ScoreMatrix {
  std::size_t items = 0;
  std::size_t labels = 0;
  std::vector<double> scores;
  std::vector<std::uint8_t> truth;

  double score(std::size_t item, std::size_t label) const { return scores[item * labels + label]; }
  bool positive(std::size_t item, std::size_t label) const {
    return truth[item * labels + label] != 0;
  }
  void validate() const;
};

struct RankingReport {
  double macro = 0.0;
  // NaN for skipped labels.
  std::vector<double> per_label;
  std::vector<LabelId> skipped;
};

// Per-label AUC by the Mann-Whitney rank statistic with average ranks for
// ties. Labels lacking a positive or a negative are skipped.
RankingReport roc_auc(const ScoreMatrix& m);

// Per-label AP: mean of precision@rank at each positive, scores descending,
// ties to the lower item index. Labels without positives are skipped.
RankingReport mean_average_precision(const ScoreMatrix& m);

}  // namespace lcp
