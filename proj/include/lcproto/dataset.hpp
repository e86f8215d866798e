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
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lcproto/labels.hpp"

namespace lcp {

enum class Split { kTrain, kValid, kTest };

const char* split_name(Split s);
std::optional<Split> parse_split(std::string_view name);

struct ManifestItem {
  std::string id;
  Split split = Split::kTrain;
  LabelSet labels;
};

struct DatasetManifest {
  LabelVocabulary vocabulary;
  std::vector<ManifestItem> items;

  // Throws Error(kBadManifest) on duplicate ids or out-of-vocabulary labels.
  void validate() const;

  // Per-label count of items carrying it, restricted to `splits` when given.
  std::vector<std::size_t> label_counts(std::span<const Split> splits = {}) const;
};

// Keeps the n most frequent labels (over all splits, ties to the lower id),
// renumbers them in ascending original-id order and drops items left without
// labels. This is how an n-tag view of a larger tag set is derived.
DatasetManifest project_top_labels(const DatasetManifest& manifest, std::size_t n);

// Row-major float embeddings keyed by item id.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  explicit EmbeddingStore(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  // Throws Error(kInvalidArgument) on a duplicate id or wrong length.
  void add(std::string id, std::span<const float> values);

  const std::string& id(std::size_t row) const { return ids_.at(row); }
  std::span<const float> row(std::size_t row) const {
    return {data_.data() + row * dim_, dim_};
  }
  std::optional<std::size_t> find(std::string_view id) const;

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::vector<float>& data() const noexcept { return data_; }

  bool operator==(const EmbeddingStore& other) const {
    return dim_ == other.dim_ && ids_ == other.ids_ && data_ == other.data_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace lcp
