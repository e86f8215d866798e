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
#include <string>
#include <vector>

#include "lcproto/dataset.hpp"
#include "lcproto/episode.hpp"

namespace lcp {

inline constexpr std::size_t kDefaultKShot = 3;

struct SamplerConfig {
  // 0 selects the whole vocabulary.
  std::size_t n_way = 0;
  std::size_t k_shot = kDefaultKShot;
  std::uint64_t seed = 0;
  std::vector<Split> support_splits{Split::kTrain, Split::kValid};
  std::size_t max_support_attempts = 100000;
};

// n distinct labels, each with at least k_shot carriers in the support splits
// and at least one test carrier. Returned in ascending id order.
std::vector<LabelId> select_n_way_labels(const DatasetManifest& manifest, std::size_t n,
                                         std::uint64_t seed, std::size_t k_shot = kDefaultKShot,
                                         const std::vector<Split>& support_splits = {
                                             Split::kTrain, Split::kValid});

// Rarest label first: every label still short of k_shot draws uniformly from
// its not-yet-drawn carriers, and each drawn item counts toward all of its
// labels. Queries are every test item outside the support.
Episode sample_episode(const DatasetManifest& manifest, const EmbeddingStore& store,
                       const SamplerConfig& config);

// Deterministic text description of an episode (labels, support, queries).
std::string episode_record(const Episode& episode, std::uint64_t seed);

}  // namespace lcp
