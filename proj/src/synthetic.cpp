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

#include "lcproto/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "lcproto/error.hpp"
#include "lcproto/random.hpp"

namespace lcp {
namespace {

std::string label_name(std::size_t i, std::size_t n) {
  const int width = n > 1 ? static_cast<int>(std::to_string(n - 1).size()) : 1;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "tag_%0*zu", width, i);
  return buf;
}

std::string item_id(Split split, std::size_t i) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s_%06zu", split_name(split), i);
  return buf;
}

void normalize(std::vector<double>& v) {
  double n = 0.0;
  for (double x : v) n += x * x;
  n = std::sqrt(n);
  if (n > 0.0)
    for (double& x : v) x /= n;
}

std::size_t draw_label_count(Rng& rng, double lambda, std::size_t cap) {
  // Rejection from the untruncated law; the retry bound only matters for
  // lambda far outside [1, cap].
  for (int tries = 0; tries < 100000; ++tries) {
    const std::size_t k = rng.poisson(lambda);
    if (k >= 1 && k <= cap) return k;
  }
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::lround(lambda)), 1, cap);
}

SyntheticDataset generate_once(const SyntheticSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t cap = std::min(spec.max_labels_per_item, spec.num_labels);

  std::vector<std::vector<double>> centroids(spec.num_labels, std::vector<double>(spec.dim));
  for (auto& c : centroids) {
    do {
      for (double& x : c) x = rng.normal();
      normalize(c);
    } while (std::all_of(c.begin(), c.end(), [](double x) { return x == 0.0; }));
  }

  std::vector<std::string> names;
  for (std::size_t i = 0; i < spec.num_labels; ++i) names.push_back(label_name(i, spec.num_labels));
  SyntheticDataset out{DatasetManifest{LabelVocabulary(std::move(names)), {}},
                       EmbeddingStore(spec.dim)};

  std::vector<LabelId> pool(spec.num_labels);
  std::vector<double> mean(spec.dim);
  std::vector<float> row(spec.dim);
  for (Split split : {Split::kTrain, Split::kValid, Split::kTest}) {
    for (std::size_t i = 0; i < spec.items_per_split; ++i) {
      const std::size_t k = draw_label_count(rng, spec.lambda, cap);
      std::iota(pool.begin(), pool.end(), LabelId{0});
      LabelSet labels;
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t pick = j + rng.uniform_index(pool.size() - j);
        std::swap(pool[j], pool[pick]);
        labels.insert(pool[j]);
      }

      std::fill(mean.begin(), mean.end(), 0.0);
      labels.for_each([&](LabelId id) {
        for (std::size_t d = 0; d < spec.dim; ++d) mean[d] += centroids[id][d];
      });
      normalize(mean);
      for (std::size_t d = 0; d < spec.dim; ++d) {
        double v = spec.centroid_scale * mean[d];
        if (spec.noise > 0.0) v += spec.noise * rng.normal();
        row[d] = static_cast<float>(v);
      }

      auto id = item_id(split, i);
      out.store.add(id, row);
      out.manifest.items.push_back({std::move(id), split, labels});
    }
  }
  return out;
}

bool covers_all_labels(const SyntheticDataset& d, std::size_t min_carriers) {
  for (Split split : {Split::kTrain, Split::kValid, Split::kTest}) {
    const Split one[] = {split};
    const auto counts = d.manifest.label_counts(one);
    for (std::size_t c : counts)
      if (c < min_carriers) return false;
  }
  return true;
}

}  // namespace

void SyntheticSpec::validate() const {
  if (num_labels == 0 || items_per_split == 0 || dim == 0 || max_labels_per_item == 0 ||
      max_attempts == 0) {
    throw Error(ErrorCode::kInvalidArgument, "synthetic spec counts must be positive");
  }
  if (num_labels > kMaxLabels) {
    throw Error(ErrorCode::kInvalidArgument, "synthetic spec exceeds the label capacity");
  }
  if (!(lambda > 0.0) || lambda > 1000.0) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be in (0, 1000]");
  }
  if (!(centroid_scale > 0.0) || !(noise >= 0.0) || !std::isfinite(centroid_scale) ||
      !std::isfinite(noise)) {
    throw Error(ErrorCode::kInvalidArgument, "centroid scale must be positive, noise non-negative");
  }
}

SyntheticDataset generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const std::size_t cap = std::min(spec.max_labels_per_item, spec.num_labels);
  if (spec.items_per_split * cap < spec.num_labels * spec.min_carriers) {
    throw Error(ErrorCode::kSpecInfeasible,
                std::to_string(spec.items_per_split) + " items per split with at most " +
                    std::to_string(cap) + " labels each cannot give " +
                    std::to_string(spec.num_labels) + " labels " +
                    std::to_string(spec.min_carriers) + " carriers");
  }
  for (std::size_t attempt = 0; attempt < spec.max_attempts; ++attempt) {
    const std::uint64_t seed = attempt == 0 ? spec.seed : mix_seed(spec.seed, attempt);
    auto data = generate_once(spec, seed);
    if (covers_all_labels(data, spec.min_carriers)) return data;
  }
  throw Error(ErrorCode::kSpecInfeasible,
              "no draw in " + std::to_string(spec.max_attempts) + " attempts gave every label " +
                  std::to_string(spec.min_carriers) + " carriers per split");
}

}  // namespace lcp
