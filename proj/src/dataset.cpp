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

#include "lcproto/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "lcproto/error.hpp"

namespace lcp {

const char* split_name(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kValid: return "valid";
    case Split::kTest: return "test";
  }
  return "?";
}

std::optional<Split> parse_split(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "valid") return Split::kValid;
  if (name == "test") return Split::kTest;
  return std::nullopt;
}

void DatasetManifest::validate() const {
  std::unordered_set<std::string> seen;
  for (const auto& item : items) {
    if (item.id.empty()) throw Error(ErrorCode::kBadManifest, "item with empty id");
    if (!seen.insert(item.id).second) {
      throw Error(ErrorCode::kBadManifest, "duplicate item id " + item.id);
    }
    if (item.labels.extent_bound() > vocabulary.size()) {
      throw Error(ErrorCode::kBadManifest, "item " + item.id + " has a label outside the vocabulary");
    }
  }
}

std::vector<std::size_t> DatasetManifest::label_counts(std::span<const Split> splits) const {
  std::vector<std::size_t> counts(vocabulary.size(), 0);
  for (const auto& item : items) {
    if (!splits.empty() && std::find(splits.begin(), splits.end(), item.split) == splits.end()) {
      continue;
    }
    item.labels.for_each([&](LabelId id) {
      if (id < counts.size()) ++counts[id];
    });
  }
  return counts;
}

DatasetManifest project_top_labels(const DatasetManifest& manifest, std::size_t n) {
  const std::size_t vocab = manifest.vocabulary.size();
  if (n == 0 || n > vocab) {
    throw Error(ErrorCode::kInvalidArgument, "cannot keep " + std::to_string(n) + " of " +
                                                 std::to_string(vocab) + " labels");
  }
  const auto counts = manifest.label_counts();
  std::vector<LabelId> order(vocab);
  std::iota(order.begin(), order.end(), LabelId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](LabelId a, LabelId b) { return counts[a] > counts[b]; });
  order.resize(n);
  std::sort(order.begin(), order.end());

  std::vector<int> remap(vocab, -1);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < order.size(); ++i) {
    remap[order[i]] = static_cast<int>(i);
    names.push_back(manifest.vocabulary.name(order[i]));
  }

  DatasetManifest out{LabelVocabulary(std::move(names)), {}};
  for (const auto& item : manifest.items) {
    LabelSet projected;
    item.labels.for_each([&](LabelId id) {
      if (id < vocab && remap[id] >= 0) projected.insert(static_cast<LabelId>(remap[id]));
    });
    if (!projected.empty()) out.items.push_back({item.id, item.split, projected});
  }
  return out;
}

void EmbeddingStore::add(std::string id, std::span<const float> values) {
  if (dim_ == 0) throw Error(ErrorCode::kInvalidArgument, "store has dim 0");
  if (values.size() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "embedding for " + id + " has dim " +
                                                   std::to_string(values.size()) + ", store has " +
                                                   std::to_string(dim_));
  }
  if (!index_.emplace(id, ids_.size()).second) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate embedding id " + id);
  }
  ids_.push_back(std::move(id));
  data_.insert(data_.end(), values.begin(), values.end());
}

std::optional<std::size_t> EmbeddingStore::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace lcp
