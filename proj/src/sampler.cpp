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

#include "lcproto/sampler.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "lcproto/error.hpp"
#include "lcproto/random.hpp"

namespace lcp {
namespace {

bool in_splits(Split s, const std::vector<Split>& splits) {
  return std::find(splits.begin(), splits.end(), s) != splits.end();
}

Error insufficient(const LabelVocabulary& vocab, LabelId label, std::size_t have,
                   std::size_t need, const char* where) {
  return Error(ErrorCode::kInsufficientItems,
               "label " + vocab.name(label) + ": " + std::to_string(have) + " " + where +
                   " items, need " + std::to_string(need));
}

}  // namespace

std::vector<LabelId> select_n_way_labels(const DatasetManifest& manifest, std::size_t n,
                                         std::uint64_t seed, std::size_t k_shot,
                                         const std::vector<Split>& support_splits) {
  const std::size_t vocab = manifest.vocabulary.size();
  if (n == 0 || n > vocab) {
    throw Error(ErrorCode::kNotEnoughEligibleLabels,
                "n_way " + std::to_string(n) + " outside [1, " + std::to_string(vocab) + "]");
  }
  const auto support_counts = manifest.label_counts(support_splits);
  const std::vector<Split> test{Split::kTest};
  const auto test_counts = manifest.label_counts(test);

  std::vector<LabelId> eligible;
  for (std::size_t id = 0; id < vocab; ++id) {
    if (support_counts[id] >= k_shot && test_counts[id] >= 1) {
      eligible.push_back(static_cast<LabelId>(id));
    }
  }
  if (eligible.size() < n) {
    throw Error(ErrorCode::kNotEnoughEligibleLabels,
                "only " + std::to_string(eligible.size()) + " labels have " +
                    std::to_string(k_shot) + " support carriers and a test carrier; need " +
                    std::to_string(n));
  }
  if (eligible.size() == n) return eligible;

  Rng rng(mix_seed(seed, 0x4C41424CULL));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + rng.uniform_index(eligible.size() - i);
    std::swap(eligible[i], eligible[j]);
  }
  eligible.resize(n);
  std::sort(eligible.begin(), eligible.end());
  return eligible;
}

Episode sample_episode(const DatasetManifest& manifest, const EmbeddingStore& store,
                       const SamplerConfig& config) {
  const std::size_t vocab = manifest.vocabulary.size();
  if (config.k_shot == 0) throw Error(ErrorCode::kInvalidArgument, "k_shot must be at least 1");
  if (config.n_way > vocab) {
    throw Error(ErrorCode::kInvalidArgument, "n_way " + std::to_string(config.n_way) +
                                                 " exceeds vocabulary size " + std::to_string(vocab));
  }
  if (config.support_splits.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no support splits configured");
  }

  std::vector<LabelId> selected;
  if (config.n_way == 0 || config.n_way == vocab) {
    selected.resize(vocab);
    std::iota(selected.begin(), selected.end(), LabelId{0});
  } else {
    selected = select_n_way_labels(manifest, config.n_way, config.seed, config.k_shot,
                                   config.support_splits);
  }

  std::vector<int> remap(vocab, -1);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    remap[selected[i]] = static_cast<int>(i);
    names.push_back(manifest.vocabulary.name(selected[i]));
  }
  Episode ep;
  ep.vocabulary = LabelVocabulary(std::move(names));
  ep.n_way = selected.size();
  ep.k_shot = config.k_shot;
  const std::size_t n = selected.size();

  std::vector<LabelSet> projected(manifest.items.size());
  for (std::size_t i = 0; i < manifest.items.size(); ++i) {
    manifest.items[i].labels.for_each([&](LabelId id) {
      if (id < vocab && remap[id] >= 0) projected[i].insert(static_cast<LabelId>(remap[id]));
    });
  }

  // Carrier lists hold manifest indices in ascending order.
  std::vector<std::vector<std::size_t>> carriers(n);
  for (std::size_t i = 0; i < manifest.items.size(); ++i) {
    if (!in_splits(manifest.items[i].split, config.support_splits)) continue;
    projected[i].for_each([&](LabelId id) { carriers[id].push_back(i); });
  }
  for (std::size_t l = 0; l < n; ++l) {
    if (carriers[l].size() < config.k_shot) {
      throw insufficient(ep.vocabulary, static_cast<LabelId>(l), carriers[l].size(),
                         config.k_shot, "support-split");
    }
  }

  std::vector<LabelId> order(n);
  std::iota(order.begin(), order.end(), LabelId{0});
  std::stable_sort(order.begin(), order.end(), [&](LabelId a, LabelId b) {
    return carriers[a].size() < carriers[b].size();
  });

  Rng rng(config.seed);
  std::vector<std::size_t> coverage(n, 0);
  std::vector<char> drawn(manifest.items.size(), 0);
  std::size_t attempts = 0;
  for (LabelId label : order) {
    if (coverage[label] >= config.k_shot) continue;
    std::vector<std::size_t> pool;
    for (std::size_t idx : carriers[label])
      if (!drawn[idx]) pool.push_back(idx);
    std::size_t remaining = pool.size();
    while (coverage[label] < config.k_shot) {
      if (remaining == 0) {
        throw insufficient(ep.vocabulary, label, coverage[label], config.k_shot, "support-split");
      }
      if (++attempts > config.max_support_attempts) {
        throw Error(ErrorCode::kAttemptLimit, "support sampling exceeded " +
                                                  std::to_string(config.max_support_attempts) +
                                                  " draws");
      }
      const std::size_t j = rng.uniform_index(remaining);
      const std::size_t pick = pool[j];
      pool[j] = pool[--remaining];
      drawn[pick] = 1;
      projected[pick].for_each([&](LabelId id) { ++coverage[id]; });
    }
  }

  auto embedding_of = [&](const std::string& id) {
    auto row = store.find(id);
    if (!row) throw Error(ErrorCode::kMissingEmbedding, "no embedding for item " + id);
    auto values = store.row(*row);
    return Embedding(values.begin(), values.end());
  };

  for (std::size_t i = 0; i < manifest.items.size(); ++i) {
    if (!drawn[i]) continue;
    ep.support.push_back({manifest.items[i].id, embedding_of(manifest.items[i].id), projected[i]});
  }

  std::vector<std::size_t> test_carriers(n, 0);
  for (std::size_t i = 0; i < manifest.items.size(); ++i) {
    const auto& item = manifest.items[i];
    if (item.split != Split::kTest || drawn[i] || projected[i].empty()) continue;
    projected[i].for_each([&](LabelId id) { ++test_carriers[id]; });
    ep.queries.push_back({item.id, embedding_of(item.id), projected[i]});
  }
  for (std::size_t l = 0; l < n; ++l) {
    if (test_carriers[l] == 0) {
      throw insufficient(ep.vocabulary, static_cast<LabelId>(l), 0, 1, "test");
    }
  }
  return ep;
}

std::string episode_record(const Episode& episode, std::uint64_t seed) {
  std::ostringstream os;
  os << "# lcproto episode v1\n";
  os << "n_way\t" << episode.n_way << "\n";
  os << "k_shot\t" << episode.k_shot << "\n";
  os << "seed\t" << seed << "\n";
  os << "labels";
  for (const auto& name : episode.vocabulary.names()) os << '\t' << name;
  os << "\n";
  auto labels = [&](const LabelSet& s) {
    std::string out;
    s.for_each([&](LabelId id) {
      if (!out.empty()) out += ',';
      out += episode.vocabulary.name(id);
    });
    return out;
  };
  for (const auto& s : episode.support) os << "support\t" << s.id << '\t' << labels(s.labels) << "\n";
  for (const auto& q : episode.queries) {
    os << "query\t" << q.id << '\t' << (q.truth ? labels(*q.truth) : std::string()) << "\n";
  }
  return os.str();
}

}  // namespace lcp
