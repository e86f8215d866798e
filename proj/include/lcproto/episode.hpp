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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcproto/labels.hpp"

namespace lcp {

// Precomputed embedding of one item. Values are stored as float; every
// reduction over them (means, dot products) runs in double.
using Embedding = std::vector<float>;

struct SupportItem {
  std::string id;
  Embedding embedding;
  LabelSet labels;
};

struct QueryItem {
  std::string id;
  Embedding embedding;
  std::optional<LabelSet> truth;
};

struct Episode {
  LabelVocabulary vocabulary;
  std::vector<SupportItem> support;
  std::vector<QueryItem> queries;
  std::size_t n_way = 0;
  std::size_t k_shot = 0;
};

struct Violation {
  std::string message;
};

// Checks every Episode invariant and reports each breach. Never throws.
std::vector<Violation> validate_episode(const Episode& episode);

bool all_finite(std::span<const float> values) noexcept;

}  // namespace lcp
