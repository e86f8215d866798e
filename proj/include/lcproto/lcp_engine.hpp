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

// Label-combination prototypes over a few-shot support set.
//
// Every non-empty subset of some support item's label set is an LC-class.
// The prototype of a class is the mean embedding of the support items whose
// label sets contain it (its extent). Classes with the same extent have the
// same prototype, so the index below stores one vector per distinct extent
// and remembers which classes share it. Classification picks the nearest
// prototype and answers with its largest class.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lcproto/episode.hpp"
#include "lcproto/labels.hpp"

namespace lcp {

inline constexpr std::size_t kDefaultMaxLabelsPerItem = 20;

// Ascending support-item indices.
using Extent = std::vector<std::uint32_t>;

// Prototype vector with its Euclidean norm cached.
struct PrototypeVector {
  std::vector<double> values;
  double norm = 0.0;
};

struct LCClassSet {
  // Ordered by cardinality, then lexicographic id tuple.
  std::vector<LabelSet> classes;
  // extents[i] belongs to classes[i].
  std::vector<Extent> extents;

  std::size_t size() const noexcept { return classes.size(); }
};

struct UniquePrototype {
  Extent extent;
  PrototypeVector vector;
  // Canonically ordered classes sharing this extent.
  std::vector<LabelSet> classes;
  LabelSet best_class;
};

struct PrototypeIndex {
  // Ordered lexicographically by extent.
  std::vector<UniquePrototype> prototypes;
  std::size_t total_classes = 0;
  std::size_t dim = 0;

  std::size_t num_prototypes() const noexcept { return prototypes.size(); }
};

// One prototype per LC-class, the undeduplicated baseline.
struct OriginalPrototype {
  LabelSet lc_class;
  Extent extent;
  PrototypeVector vector;
};

struct Prediction {
  std::string query_id;
  LabelSet labels;
  double distance = 0.0;
  Extent prototype_extent;
};

LCClassSet enumerate_lc_classes(std::span<const SupportItem> support,
                                std::size_t max_labels_per_item = kDefaultMaxLabelsPerItem);

Extent extent_of(const LabelSet& lc_class, std::span<const SupportItem> support);

// Mean of the extent members' embeddings: ascending index order, double
// accumulator, one division at the end.
PrototypeVector mean_embedding(const Extent& extent, std::span<const SupportItem> support);

std::vector<OriginalPrototype> build_prototypes_original(
    std::span<const SupportItem> support,
    std::size_t max_labels_per_item = kDefaultMaxLabelsPerItem);

PrototypeIndex build_prototype_index(std::span<const SupportItem> support,
                                     std::size_t max_labels_per_item = kDefaultMaxLabelsPerItem);

double cosine_distance(std::span<const float> a, std::span<const float> b);
double cosine_distance(std::span<const double> a, std::span<const double> b);

Prediction classify(const QueryItem& query, const PrototypeIndex& index);
Prediction classify_original(const QueryItem& query, std::span<const OriginalPrototype> prototypes);

// Maximum cardinality, ties to the lexicographically smallest id tuple.
const LabelSet& max_cardinality_class(std::span<const LabelSet> classes);

}  // namespace lcp
