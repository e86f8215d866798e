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

#include "lcproto/episode.hpp"

#include <cmath>
#include <unordered_set>

namespace lcp {

bool all_finite(std::span<const float> values) noexcept {
  for (float v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

std::vector<Violation> validate_episode(const Episode& episode) {
  std::vector<Violation> out;
  const std::size_t vocab_size = episode.vocabulary.size();
  if (vocab_size == 0) out.push_back({"vocabulary is empty"});
  if (episode.support.empty()) out.push_back({"support set is empty"});

  std::size_t dim = 0;
  bool have_dim = false;
  auto check_embedding = [&](const std::string& kind, const std::string& id, const Embedding& e) {
    if (e.empty()) {
      out.push_back({kind + " " + id + ": empty embedding"});
      return;
    }
    if (!have_dim) {
      dim = e.size();
      have_dim = true;
    } else if (e.size() != dim) {
      out.push_back({kind + " " + id + ": dim " + std::to_string(e.size()) + " != " +
                     std::to_string(dim)});
    }
    if (!all_finite(e)) out.push_back({kind + " " + id + ": non-finite embedding value"});
  };

  std::vector<std::size_t> shots(vocab_size, 0);
  std::unordered_set<std::string> support_ids;
  for (const auto& item : episode.support) {
    check_embedding("support", item.id, item.embedding);
    if (!support_ids.insert(item.id).second) {
      out.push_back({"duplicate support id: " + item.id});
    }
    if (item.labels.empty()) out.push_back({"support " + item.id + ": empty label set"});
    if (item.labels.extent_bound() > vocab_size) {
      out.push_back({"support " + item.id + ": label id outside vocabulary"});
    }
    item.labels.for_each([&](LabelId id) {
      if (id < vocab_size) ++shots[id];
    });
  }
  for (std::size_t id = 0; id < vocab_size; ++id) {
    if (shots[id] < episode.k_shot) {
      out.push_back({"label " + episode.vocabulary.name(static_cast<LabelId>(id)) + ": " +
                     std::to_string(shots[id]) + " < " + std::to_string(episode.k_shot) +
                     " shots"});
    }
  }

  std::unordered_set<std::string> query_ids;
  for (const auto& q : episode.queries) {
    check_embedding("query", q.id, q.embedding);
    if (!query_ids.insert(q.id).second) out.push_back({"duplicate query id: " + q.id});
    if (support_ids.count(q.id)) out.push_back({"overlap: " + q.id});
    if (q.truth && q.truth->extent_bound() > vocab_size) {
      out.push_back({"query " + q.id + ": truth label outside vocabulary"});
    }
  }
  return out;
}

}  // namespace lcp
