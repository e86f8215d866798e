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

// Reference implementations used only by tests. Each one takes a different
// route from the library code it checks: label sets as sorted vectors instead
// of bitmasks, O(n^2) pair counting instead of ranks, finite differences
// instead of backpropagation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lcproto/episode.hpp"
#include "lcproto/probe.hpp"
#include "lcproto/random.hpp"

namespace oracle {

using Ids = std::vector<int>;  // ascending

inline Ids ids_of(const lcp::LabelSet& s) {
  Ids out;
  for (auto id : s.ids()) out.push_back(id);
  return out;
}

inline lcp::LabelSet to_set(const Ids& ids) {
  lcp::LabelSet s;
  for (int id : ids) s.insert(static_cast<lcp::LabelId>(id));
  return s;
}

inline bool subset(const Ids& a, const Ids& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Non-empty subsets of every item's labels, by recursive enumeration.
inline std::set<Ids> power_set_union(const std::vector<Ids>& items) {
  std::set<Ids> out;
  for (const auto& labels : items) {
    std::function<void(std::size_t, Ids&)> rec = [&](std::size_t i, Ids& cur) {
      if (i == labels.size()) {
        if (!cur.empty()) out.insert(cur);
        return;
      }
      rec(i + 1, cur);
      cur.push_back(labels[i]);
      rec(i + 1, cur);
      cur.pop_back();
    };
    Ids cur;
    rec(0, cur);
  }
  return out;
}

// Brute-force classifier: one prototype per class, nearest by cosine
// distance, ties to the larger class then the lexicographically smaller one.
inline Ids classify_bruteforce(const std::vector<Ids>& labels,
                               const std::vector<std::vector<float>>& embeddings,
                               const std::vector<float>& query) {
  const auto classes = power_set_union(labels);
  double best_d = 0.0;
  Ids best;
  bool have = false;
  for (const auto& cls : classes) {
    std::vector<double> proto(query.size(), 0.0);
    std::size_t n = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!subset(cls, labels[i])) continue;
      for (std::size_t d = 0; d < query.size(); ++d) proto[d] += embeddings[i][d];
      ++n;
    }
    for (double& v : proto) v /= static_cast<double>(n);
    double dot = 0.0, nq = 0.0, np = 0.0;
    for (std::size_t d = 0; d < query.size(); ++d) {
      dot += query[d] * proto[d];
      nq += static_cast<double>(query[d]) * query[d];
      np += proto[d] * proto[d];
    }
    const double dist = 1.0 - dot / (std::sqrt(nq) * std::sqrt(np));
    const bool better = !have || dist < best_d ||
                        (dist == best_d && (cls.size() > best.size() ||
                                            (cls.size() == best.size() && cls < best)));
    if (better) {
      best = cls;
      best_d = dist;
      have = true;
    }
  }
  return best;
}

struct F1Oracle {
  double macro = 0.0;
  double micro = 0.0;
};

inline F1Oracle f1(const std::vector<Ids>& pred, const std::vector<Ids>& truth, int labels) {
  double sum = 0.0;
  int included = 0;
  long TP = 0, FP = 0, FN = 0;
  for (int l = 0; l < labels; ++l) {
    long tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      const bool p = std::count(pred[i].begin(), pred[i].end(), l) > 0;
      const bool t = std::count(truth[i].begin(), truth[i].end(), l) > 0;
      tp += p && t;
      fp += p && !t;
      fn += !p && t;
    }
    TP += tp;
    FP += fp;
    FN += fn;
    if (tp + fn == 0) continue;
    const double precision = tp + fp ? static_cast<double>(tp) / (tp + fp) : 0.0;
    const double recall = static_cast<double>(tp) / (tp + fn);
    sum += precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
    ++included;
  }
  F1Oracle r;
  r.macro = included ? sum / included : 0.0;
  const double P = TP + FP ? static_cast<double>(TP) / (TP + FP) : 0.0;
  const double R = TP + FN ? static_cast<double>(TP) / (TP + FN) : 0.0;
  r.micro = P + R > 0 ? 2 * P * R / (P + R) : 0.0;
  return r;
}

// Probability a random positive outscores a random negative, ties = 1/2.
inline double auc_pairwise(const std::vector<double>& s, const std::vector<int>& t) {
  double wins = 0.0;
  long pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!t[i]) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (t[j]) continue;
      ++pairs;
      if (s[i] > s[j]) wins += 1.0;
      else if (s[i] == s[j]) wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

// For every positive: (# items ranked at or above it) counted directly.
inline double average_precision(const std::vector<double>& s, const std::vector<int>& t) {
  auto above = [&](std::size_t a, std::size_t b) {  // a ranked before b
    return s[a] > s[b] || (s[a] == s[b] && a < b);
  };
  double sum = 0.0;
  int positives = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!t[i]) continue;
    ++positives;
    int rank = 1, pos_at_or_above = 1;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j == i || !above(j, i)) continue;
      ++rank;
      pos_at_or_above += t[j];
    }
    sum += static_cast<double>(pos_at_or_above) / rank;
  }
  return sum / positives;
}

// Central differences of the batch loss w.r.t. one flat parameter.
inline double fd_gradient(const lcp::ProbeBatch& batch, lcp::ProbeParams params, std::size_t k,
                          double h) {
  const double orig = params.flat()[k];
  params.flat()[k] = orig + h;
  const double up = lcp::batch_loss(batch, params);
  params.flat()[k] = orig - h;
  const double down = lcp::batch_loss(batch, params);
  return (up - down) / (2.0 * h);
}

// Hidden-unit activation pattern; a finite difference is only meaningful when
// the perturbation keeps it fixed.
inline std::vector<char> relu_pattern(const lcp::ProbeBatch& batch, const lcp::ProbeParams& p) {
  std::vector<char> out;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto x = batch.input(i);
    for (std::size_t j = 0; j < p.hidden(); ++j) {
      double z = p.b1()[j];
      for (std::size_t k = 0; k < p.input_dim(); ++k) z += p.w1()[j * p.input_dim() + k] * x[k];
      out.push_back(z > 0.0);
    }
  }
  return out;
}

// Scalar Adam written straight from the update equations.
struct ScalarAdam {
  double lr = 1e-3, b1 = 0.9, b2 = 0.999, eps = 1e-8;
  double m = 0.0, v = 0.0;
  int t = 0;
  double step(double param, double g) {
    ++t;
    m = b1 * m + (1 - b1) * g;
    v = b2 * v + (1 - b2) * g * g;
    const double mh = m / (1 - std::pow(b1, t));
    const double vh = v / (1 - std::pow(b2, t));
    return param - lr * mh / (std::sqrt(vh) + eps);
  }
};

// Random support set: `items` items over `labels` labels, 1..max_per_item
// labels each, Gaussian embeddings of `dim`.
struct GradCheck {
  double max_rel_error = 0.0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
};

// Coordinates whose perturbation flips a ReLU are skipped; the loss is not
// differentiable across the kink.
inline GradCheck check_gradient(const lcp::ProbeBatch& batch, const lcp::ProbeParams& params,
                                const lcp::ProbeParams& analytic, double h = 1e-4,
                                double floor = 1e-6) {
  GradCheck out;
  const auto base = relu_pattern(batch, params);
  for (std::size_t k = 0; k < params.flat().size(); ++k) {
    lcp::ProbeParams up = params, down = params;
    up.flat()[k] += h;
    down.flat()[k] -= h;
    if (relu_pattern(batch, up) != base || relu_pattern(batch, down) != base) {
      ++out.skipped;
      continue;
    }
    const double numeric = fd_gradient(batch, params, k, h);
    const double a = analytic.flat()[k];
    const double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), floor});
    out.max_rel_error = std::max(out.max_rel_error, rel);
    ++out.checked;
  }
  return out;
}

inline lcp::ProbeBatch random_batch(lcp::Rng& rng, std::size_t dim, std::size_t labels,
                                    std::size_t n) {
  lcp::ProbeBatch b;
  b.dim = dim;
  b.labels = labels;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(dim), t(labels);
    for (auto& v : x) v = rng.normal();
    for (auto& v : t) v = rng.uniform01() < 0.4 ? 1.0 : 0.0;
    b.add(x, t);
  }
  return b;
}

inline lcp::ProbeParams random_params(lcp::Rng& rng, std::size_t dim, std::size_t hidden,
                                      std::size_t labels) {
  lcp::ProbeParams p(dim, hidden, labels);
  for (auto& v : p.flat()) v = 0.5 * rng.normal();
  return p;
}

inline std::vector<lcp::SupportItem> random_support(lcp::Rng& rng, std::size_t labels,
                                                    std::size_t items, std::size_t max_per_item,
                                                    std::size_t dim) {
  std::vector<lcp::SupportItem> out;
  for (std::size_t i = 0; i < items; ++i) {
    lcp::SupportItem s;
    s.id = "s" + std::to_string(i);
    const std::size_t k = 1 + rng.uniform_index(std::min(max_per_item, labels));
    while (s.labels.size() < k) s.labels.insert(static_cast<lcp::LabelId>(rng.uniform_index(labels)));
    s.embedding.resize(dim);
    for (auto& v : s.embedding) v = static_cast<float>(rng.normal());
    out.push_back(std::move(s));
  }
  return out;
}

inline lcp::QueryItem random_query(lcp::Rng& rng, std::size_t dim, const std::string& id) {
  lcp::QueryItem q;
  q.id = id;
  q.embedding.resize(dim);
  for (auto& v : q.embedding) v = static_cast<float>(rng.normal());
  return q;
}

}  // namespace oracle
