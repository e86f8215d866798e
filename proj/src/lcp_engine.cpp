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

#include "lcproto/lcp_engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "lcproto/error.hpp"

namespace lcp {
namespace {

std::size_t check_support(std::span<const SupportItem> support) {
  if (support.empty()) throw Error(ErrorCode::kEmptySupport, "support set is empty");
  const std::size_t dim = support.front().embedding.size();
  if (dim == 0) throw Error(ErrorCode::kDimensionMismatch, "support embeddings have dim 0");
  for (const auto& item : support) {
    if (item.embedding.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "support item " + item.id + " has dim " + std::to_string(item.embedding.size()) +
                      ", expected " + std::to_string(dim));
    }
  }
  return dim;
}

double norm_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

template <typename T>
double query_norm(std::span<const T> v) {
  double s = 0.0;
  for (T x : v) s += static_cast<double>(x) * static_cast<double>(x);
  return std::sqrt(s);
}

// Single formula shared by every distance computation so that identical
// prototype vectors always yield bit-identical distances.
template <typename T>
double distance_to(std::span<const T> q, double q_norm, const PrototypeVector& p) {
  if (p.norm == 0.0) throw Error(ErrorCode::kZeroNormVector, "prototype has zero norm");
  double dot = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) dot += static_cast<double>(q[i]) * p.values[i];
  return 1.0 - dot / (q_norm * p.norm);
}

double checked_query_norm(const QueryItem& query, std::size_t dim) {
  if (query.embedding.size() != dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "query " + query.id + " has dim " + std::to_string(query.embedding.size()) +
                    ", index has dim " + std::to_string(dim));
  }
  const double n = query_norm(std::span<const float>(query.embedding));
  if (n == 0.0) throw Error(ErrorCode::kZeroNormVector, "query " + query.id + " has zero norm");
  return n;
}

// Strict "a beats b" under the tie rule for equal distances: larger class,
// then lexicographically smaller class, then smaller extent.
bool wins_tie(const LabelSet& a_class, const Extent& a_extent, const LabelSet& b_class,
              const Extent& b_extent) {
  const auto na = a_class.size(), nb = b_class.size();
  if (na != nb) return na > nb;
  const auto lex = LabelSet::lex_compare(a_class, b_class);
  if (lex != 0) return lex < 0;
  return a_extent < b_extent;
}

}  // namespace

LCClassSet enumerate_lc_classes(std::span<const SupportItem> support,
                                std::size_t max_labels_per_item) {
  if (support.empty()) throw Error(ErrorCode::kEmptySupport, "support set is empty");
  if (max_labels_per_item > 30) {
    throw Error(ErrorCode::kInvalidArgument, "max_labels_per_item above 30 is not supported");
  }
  std::unordered_map<LabelSet, Extent, LabelSetHash> extents;
  for (std::uint32_t i = 0; i < support.size(); ++i) {
    const auto& item = support[i];
    const auto ids = item.labels.ids();
    if (ids.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "support item " + item.id + " has no labels");
    }
    if (ids.size() > max_labels_per_item) {
      throw Error(ErrorCode::kLabelCapExceeded,
                  "support item " + item.id + " has " + std::to_string(ids.size()) +
                      " labels; cap is " + std::to_string(max_labels_per_item));
    }
    const std::uint32_t subsets = 1U << ids.size();
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
      LabelSet cls;
      for (std::size_t b = 0; b < ids.size(); ++b)
        if (mask & (1U << b)) cls.insert(ids[b]);
      auto& ext = extents[cls];
      // Items arrive in ascending order, so extents stay sorted.
      if (ext.empty() || ext.back() != i) ext.push_back(i);
    }
  }

  std::vector<LabelSet> classes;
  classes.reserve(extents.size());
  for (const auto& [cls, ext] : extents) classes.push_back(cls);
  std::sort(classes.begin(), classes.end(), CanonicalLess{});

  LCClassSet out;
  out.extents.reserve(classes.size());
  for (const auto& cls : classes) out.extents.push_back(std::move(extents.at(cls)));
  out.classes = std::move(classes);
  return out;
}

Extent extent_of(const LabelSet& lc_class, std::span<const SupportItem> support) {
  if (lc_class.empty()) throw Error(ErrorCode::kClassNotInL, "empty label combination");
  Extent ext;
  for (std::uint32_t i = 0; i < support.size(); ++i) {
    if (lc_class.is_subset_of(support[i].labels)) ext.push_back(i);
  }
  if (ext.empty()) {
    throw Error(ErrorCode::kClassNotInL,
                "no support item contains " + format_labels(lc_class));
  }
  return ext;
}

PrototypeVector mean_embedding(const Extent& extent, std::span<const SupportItem> support) {
  if (extent.empty()) throw Error(ErrorCode::kInvalidArgument, "empty extent");
  const std::size_t dim = support[extent.front()].embedding.size();
  std::vector<double> sum(dim, 0.0);
  for (std::uint32_t idx : extent) {
    const auto& e = support[idx].embedding;
    for (std::size_t j = 0; j < dim; ++j) sum[j] += static_cast<double>(e[j]);
  }
  const double n = static_cast<double>(extent.size());
  for (double& v : sum) v /= n;
  PrototypeVector p;
  p.norm = norm_of(sum);
  p.values = std::move(sum);
  return p;
}

std::vector<OriginalPrototype> build_prototypes_original(std::span<const SupportItem> support,
                                                         std::size_t max_labels_per_item) {
  check_support(support);
  auto lc = enumerate_lc_classes(support, max_labels_per_item);
  std::vector<OriginalPrototype> out;
  out.reserve(lc.size());
  for (std::size_t i = 0; i < lc.size(); ++i) {
    OriginalPrototype p;
    p.lc_class = lc.classes[i];
    p.vector = mean_embedding(lc.extents[i], support);
    p.extent = std::move(lc.extents[i]);
    out.push_back(std::move(p));
  }
  return out;
}

PrototypeIndex build_prototype_index(std::span<const SupportItem> support,
                                     std::size_t max_labels_per_item) {
  const std::size_t dim = check_support(support);
  auto lc = enumerate_lc_classes(support, max_labels_per_item);

  std::map<Extent, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < lc.size(); ++i) groups[lc.extents[i]].push_back(i);

  PrototypeIndex index;
  index.total_classes = lc.size();
  index.dim = dim;
  index.prototypes.reserve(groups.size());
  for (auto& [extent, members] : groups) {
    UniquePrototype p;
    p.classes.reserve(members.size());
    for (std::size_t m : members) p.classes.push_back(lc.classes[m]);
    p.best_class = max_cardinality_class(p.classes);
    p.vector = mean_embedding(extent, support);
    p.extent = extent;
    index.prototypes.push_back(std::move(p));
  }
  return index;
}

const LabelSet& max_cardinality_class(std::span<const LabelSet> classes) {
  if (classes.empty()) throw Error(ErrorCode::kInvalidArgument, "no classes to choose from");
  const LabelSet* best = &classes.front();
  std::size_t best_n = best->size();
  for (const auto& c : classes.subspan(1)) {
    const std::size_t n = c.size();
    if (n > best_n || (n == best_n && LabelSet::lex_compare(c, *best) < 0)) {
      best = &c;
      best_n = n;
    }
  }
  return *best;
}

double cosine_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "cosine_distance: dims " + std::to_string(a.size()) +
                                                   " and " + std::to_string(b.size()));
  }
  const double na = norm_of(a);
  if (na == 0.0) throw Error(ErrorCode::kZeroNormVector, "cosine_distance: zero-norm vector");
  PrototypeVector pb{std::vector<double>(b.begin(), b.end()), norm_of(b)};
  return distance_to(a, na, pb);
}

double cosine_distance(std::span<const float> a, std::span<const float> b) {
  std::vector<double> da(a.begin(), a.end()), db(b.begin(), b.end());
  return cosine_distance(std::span<const double>(da), std::span<const double>(db));
}

Prediction classify(const QueryItem& query, const PrototypeIndex& index) {
  if (index.prototypes.empty()) throw Error(ErrorCode::kEmptyIndex, "prototype index is empty");
  const double qn = checked_query_norm(query, index.dim);
  const std::span<const float> q(query.embedding);

  const UniquePrototype* best = nullptr;
  double best_d = 0.0;
  for (const auto& p : index.prototypes) {
    const double d = distance_to(q, qn, p.vector);
    if (!best || d < best_d ||
        (d == best_d && wins_tie(p.best_class, p.extent, best->best_class, best->extent))) {
      best = &p;
      best_d = d;
    }
  }
  return Prediction{query.id, best->best_class, best_d, best->extent};
}

Prediction classify_original(const QueryItem& query,
                             std::span<const OriginalPrototype> prototypes) {
  if (prototypes.empty()) throw Error(ErrorCode::kEmptyIndex, "prototype list is empty");
  const double qn = checked_query_norm(query, prototypes.front().vector.values.size());
  const std::span<const float> q(query.embedding);

  const OriginalPrototype* best = nullptr;
  double best_d = 0.0;
  for (const auto& p : prototypes) {
    const double d = distance_to(q, qn, p.vector);
    if (!best || d < best_d ||
        (d == best_d && wins_tie(p.lc_class, p.extent, best->lc_class, best->extent))) {
      best = &p;
      best_d = d;
    }
  }
  return Prediction{query.id, best->lc_class, best_d, best->extent};
}

}  // namespace lcp
