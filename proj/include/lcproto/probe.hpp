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

// Shallow probing head on frozen embeddings: one ReLU hidden layer feeding
// per-label sigmoid outputs, trained with binary cross-entropy and Adam.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lcproto/dataset.hpp"

namespace lcp {

inline constexpr std::size_t kProbeHidden = 512;
inline constexpr double kBceClamp = 1e-7;

// All weights live in one flat buffer so optimizers can treat the model as a
// single vector. Layout: w1 (hidden x input, row-major), b1, w2 (labels x
// hidden, row-major), b2.
class ProbeParams {
 public:
  ProbeParams() = default;
  ProbeParams(std::size_t input_dim, std::size_t hidden, std::size_t labels);

  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t hidden() const noexcept { return hidden_; }
  std::size_t labels() const noexcept { return labels_; }

  std::span<double> w1() { return span(0, hidden_ * input_dim_); }
  std::span<double> b1() { return span(w1_size(), hidden_); }
  std::span<double> w2() { return span(w1_size() + hidden_, labels_ * hidden_); }
  std::span<double> b2() { return span(w1_size() + hidden_ + labels_ * hidden_, labels_); }
  std::span<const double> w1() const { return cspan(0, hidden_ * input_dim_); }
  std::span<const double> b1() const { return cspan(w1_size(), hidden_); }
  std::span<const double> w2() const { return cspan(w1_size() + hidden_, labels_ * hidden_); }
  std::span<const double> b2() const {
    return cspan(w1_size() + hidden_ + labels_ * hidden_, labels_);
  }

  std::vector<double>& flat() noexcept { return values_; }
  const std::vector<double>& flat() const noexcept { return values_; }

  bool same_shape(const ProbeParams& o) const noexcept {
    return input_dim_ == o.input_dim_ && hidden_ == o.hidden_ && labels_ == o.labels_;
  }
  bool operator==(const ProbeParams& o) const = default;

 private:
  std::size_t w1_size() const noexcept { return hidden_ * input_dim_; }
  std::span<double> span(std::size_t off, std::size_t n) { return {values_.data() + off, n}; }
  std::span<const double> cspan(std::size_t off, std::size_t n) const {
    return {values_.data() + off, n};
  }

  std::size_t input_dim_ = 0;
  std::size_t hidden_ = 0;
  std::size_t labels_ = 0;
  std::vector<double> values_;
};

// Glorot-uniform weights, zero biases.
ProbeParams init_probe(std::size_t input_dim, std::size_t labels, std::uint64_t seed,
                       std::size_t hidden = kProbeHidden);

struct ProbeOutput {
  std::vector<double> scores;
  std::vector<double> hidden;
};

ProbeOutput probe_forward(std::span<const double> x, const ProbeParams& params);
ProbeOutput probe_forward(std::span<const float> x, const ProbeParams& params);

std::vector<double> extract_probe_features(std::span<const float> x, const ProbeParams& params);

// Mean over labels of the clamped binary cross-entropy.
double bce_loss(std::span<const double> scores, std::span<const double> targets);

// Row-major inputs with 0/1 targets.
struct ProbeBatch {
  std::size_t dim = 0;
  std::size_t labels = 0;
  std::vector<double> x;
  std::vector<double> targets;

  std::size_t size() const noexcept { return dim ? x.size() / dim : 0; }
  std::span<const double> input(std::size_t i) const { return {x.data() + i * dim, dim}; }
  std::span<const double> target(std::size_t i) const {
    return {targets.data() + i * labels, labels};
  }
  void add(std::span<const double> input, std::span<const double> target);
};

struct ProbeGradient {
  ProbeParams grad;
  double loss = 0.0;
};

// Gradient of the batch-mean BCE, using dL/dz = (s - t) / labels at the output.
ProbeGradient probe_gradient(const ProbeBatch& batch, const ProbeParams& params);
ProbeGradient probe_gradient(const ProbeBatch& batch, std::span<const std::size_t> rows,
                             const ProbeParams& params);

double batch_loss(const ProbeBatch& batch, const ProbeParams& params);

struct TrainConfig {
  double learning_rate = 1e-3;
  std::size_t batch_size = 16;
  std::size_t patience = 10;
  std::size_t max_epochs = 200;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 0;
  std::size_t hidden = kProbeHidden;

  void validate() const;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::uint64_t t = 0;
};

void adam_step(ProbeParams& params, const ProbeParams& grads, AdamState& state,
               const TrainConfig& config);
// Same update on a bare vector; the scalar reference in tests drives this.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               const TrainConfig& config);

struct EpochStats {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double valid_loss = 0.0;
};

struct TrainResult {
  ProbeParams params;
  std::vector<EpochStats> history;
  std::size_t best_epoch = 0;
  double best_valid_loss = 0.0;
};

// Minibatch Adam with early stopping on validation loss. Returns the
// parameters of the best validation epoch.
TrainResult train_probe(const ProbeBatch& train, const ProbeBatch& valid, const TrainConfig& config);

// Gathers items of `split` that have an embedding; multi-hot targets over the
// manifest vocabulary. Throws Error(kMissingEmbedding) for absent ids.
ProbeBatch make_probe_batch(const DatasetManifest& manifest, const EmbeddingStore& store,
                            Split split);

// Per-item sigmoid scores, row-major (items x labels).
std::vector<double> probe_scores(const ProbeBatch& batch, const ProbeParams& params);

// Hidden-layer features for every row of the store, same ids and order.
EmbeddingStore extract_feature_store(const EmbeddingStore& store, const ProbeParams& params);

}  // namespace lcp
