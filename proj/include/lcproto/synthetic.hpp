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

#include "lcproto/dataset.hpp"

namespace lcp {

// Clustered multi-label data standing in for foundation-model embeddings.
// Each label owns a random unit centroid; an item's embedding is
// centroid_scale * normalize(mean of its labels' centroids) plus isotropic
// Gaussian noise. Labels per item follow a Poisson(lambda) law truncated to
// [1, max_labels_per_item].
struct SyntheticSpec {
  std::size_t num_labels = 20;
  std::size_t items_per_split = 200;
  double lambda = 3.0;
  std::size_t max_labels_per_item = 8;
  std::size_t dim = 32;
  double centroid_scale = 1.0;
  double noise = 0.1;
  std::uint64_t seed = 0;
  // Every label must reach this many carriers in each split.
  std::size_t min_carriers = 3;
  std::size_t max_attempts = 32;

  void validate() const;
};

struct SyntheticDataset {
  DatasetManifest manifest;
  EmbeddingStore store;
};

SyntheticDataset generate_synthetic(const SyntheticSpec& spec);

}  // namespace lcp
