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

#include "lcproto/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lcproto/error.hpp"

namespace lcp {

ConfusionCounts confusion_counts(std::span<const LabelSetPair> predictions, std::size_t num_labels) {
  ConfusionCounts c;
  c.per_label.assign(num_labels, {});
  for (const auto& [pred, truth] : predictions) {
    if (pred.extent_bound() > num_labels || truth.extent_bound() > num_labels) {
      throw Error(ErrorCode::kInvalidArgument, "label id outside the vocabulary");
    }
    for (std::size_t l = 0; l < num_labels; ++l) {
      const auto id = static_cast<LabelId>(l);
      const bool p = pred.contains(id), t = truth.contains(id);
      if (p && t) ++c.per_label[l].tp;
      else if (p) ++c.per_label[l].fp;
      else if (t) ++c.per_label[l].fn;
    }
  }
  for (const auto& lc : c.per_label) {
    c.total.tp += lc.tp;
    c.total.fp += lc.fp;
    c.total.fn += lc.fn;
  }
  return c;
}

double f1_from_counts(const LabelCounts& c) {
  const std::size_t denom = 2 * c.tp + c.fp + c.fn;
  if (denom == 0) return 0.0;
  return 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom);
}

F1Report f1_scores(std::span<const LabelSetPair> predictions, std::size_t num_labels) {
  if (predictions.empty()) throw Error(ErrorCode::kEmptyInput, "f1_scores: no predictions");
  F1Report r;
  r.counts = confusion_counts(predictions, num_labels);
  r.per_label.resize(num_labels);
  double sum = 0.0;
  std::size_t included = 0;
  for (std::size_t l = 0; l < num_labels; ++l) {
    const auto& c = r.counts.per_label[l];
    r.per_label[l] = f1_from_counts(c);
    if (c.tp + c.fn == 0) {
      r.skipped.push_back(static_cast<LabelId>(l));
      continue;
    }
    sum += r.per_label[l];
    ++included;
  }
  r.macro_f1 = included ? sum / static_cast<double>(included) : 0.0;
  r.micro_f1 = f1_from_counts(r.counts.total);
  return r;
}

void ScoreMatrix::validate() const {
  if (scores.size() != items * labels || truth.size() != items * labels) {
    throw Error(ErrorCode::kDimensionMismatch, "score and truth matrices differ in shape");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) throw Error(ErrorCode::kNonFiniteValue, "non-finite score");
  }
}

RankingReport roc_auc(const ScoreMatrix& m) {
  m.validate();
  RankingReport r;
  r.per_label.assign(m.labels, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::size_t> order(m.items);
  double sum = 0.0;
  std::size_t included = 0;
  for (std::size_t l = 0; l < m.labels; ++l) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < m.items; ++i) pos += m.positive(i, l) ? 1 : 0;
    const std::size_t neg = m.items - pos;
    if (pos == 0 || neg == 0) {
      r.skipped.push_back(static_cast<LabelId>(l));
      continue;
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return m.score(a, l) < m.score(b, l); });
    // Sum of (1-based, tie-averaged) ranks of the positives.
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < m.items;) {
      std::size_t j = i;
      while (j < m.items && m.score(order[j], l) == m.score(order[i], l)) ++j;
      const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);
      for (std::size_t k = i; k < j; ++k)
        if (m.positive(order[k], l)) rank_sum += avg_rank;
      i = j;
    }
    const double p = static_cast<double>(pos), n = static_cast<double>(neg);
    const double auc = (rank_sum - p * (p + 1.0) / 2.0) / (p * n);
    r.per_label[l] = auc;
    sum += auc;
    ++included;
  }
  if (included == 0) {
    throw Error(ErrorCode::kNoValidLabels, "roc_auc: no label has both positives and negatives");
  }
  r.macro = sum / static_cast<double>(included);
  return r;
}

RankingReport mean_average_precision(const ScoreMatrix& m) {
  m.validate();
  RankingReport r;
  r.per_label.assign(m.labels, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::size_t> order(m.items);
  double sum = 0.0;
  std::size_t included = 0;
  for (std::size_t l = 0; l < m.labels; ++l) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return m.score(a, l) > m.score(b, l); });
    double precision_sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t rank = 0; rank < m.items; ++rank) {
      if (!m.positive(order[rank], l)) continue;
      ++hits;
      precision_sum += static_cast<double>(hits) / static_cast<double>(rank + 1);
    }
    if (hits == 0) {
      r.skipped.push_back(static_cast<LabelId>(l));
      continue;
    }
    r.per_label[l] = precision_sum / static_cast<double>(hits);
    sum += r.per_label[l];
    ++included;
  }
  if (included == 0) throw Error(ErrorCode::kNoValidLabels, "mean_average_precision: no positives");
  r.macro = sum / static_cast<double>(included);
  return r;
}

}  // namespace lcp
