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

#include "lcproto/probe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lcproto/error.hpp"
#include "lcproto/random.hpp"

namespace lcp {
namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void check_input(std::size_t got, const ProbeParams& p) {
  if (got != p.input_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "probe expects dim " +
                                                   std::to_string(p.input_dim()) + ", got " +
                                                   std::to_string(got));
  }
}

// Forward pass writing pre-activations too; z1 is needed for the ReLU mask.
template <typename T>
void forward_into(std::span<const T> x, const ProbeParams& p, std::vector<double>& z1,
                  std::vector<double>& h, std::vector<double>& s) {
  const std::size_t in = p.input_dim(), hid = p.hidden(), out = p.labels();
  z1.assign(hid, 0.0);
  h.assign(hid, 0.0);
  s.assign(out, 0.0);
  const auto w1 = p.w1();
  const auto b1 = p.b1();
  for (std::size_t j = 0; j < hid; ++j) {
    double acc = b1[j];
    const double* row = w1.data() + j * in;
    for (std::size_t k = 0; k < in; ++k) acc += row[k] * static_cast<double>(x[k]);
    z1[j] = acc;
    h[j] = acc > 0.0 ? acc : 0.0;
  }
  const auto w2 = p.w2();
  const auto b2 = p.b2();
  for (std::size_t l = 0; l < out; ++l) {
    double acc = b2[l];
    const double* row = w2.data() + l * hid;
    for (std::size_t j = 0; j < hid; ++j) acc += row[j] * h[j];
    s[l] = sigmoid(acc);
  }
}

}  // namespace

ProbeParams::ProbeParams(std::size_t input_dim, std::size_t hidden, std::size_t labels)
    : input_dim_(input_dim),
      hidden_(hidden),
      labels_(labels),
      values_(hidden * input_dim + hidden + labels * hidden + labels, 0.0) {
  if (input_dim == 0 || hidden == 0 || labels == 0) {
    throw Error(ErrorCode::kInvalidArgument, "probe dimensions must be positive");
  }
}

ProbeParams init_probe(std::size_t input_dim, std::size_t labels, std::uint64_t seed,
                       std::size_t hidden) {
  ProbeParams p(input_dim, hidden, labels);
  Rng rng(seed);
  const double a1 = std::sqrt(6.0 / static_cast<double>(input_dim + hidden));
  for (double& w : p.w1()) w = rng.uniform(-a1, a1);
  const double a2 = std::sqrt(6.0 / static_cast<double>(hidden + labels));
  for (double& w : p.w2()) w = rng.uniform(-a2, a2);
  return p;
}

ProbeOutput probe_forward(std::span<const double> x, const ProbeParams& params) {
  check_input(x.size(), params);
  std::vector<double> z1;
  ProbeOutput out;
  forward_into(x, params, z1, out.hidden, out.scores);
  return out;
}

ProbeOutput probe_forward(std::span<const float> x, const ProbeParams& params) {
  check_input(x.size(), params);
  std::vector<double> z1;
  ProbeOutput out;
  forward_into(x, params, z1, out.hidden, out.scores);
  return out;
}

std::vector<double> extract_probe_features(std::span<const float> x, const ProbeParams& params) {
  return probe_forward(x, params).hidden;
}

double bce_loss(std::span<const double> scores, std::span<const double> targets) {
  if (scores.size() != targets.size() || scores.empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "bce_loss: scores and targets differ in length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double s = std::clamp(scores[i], kBceClamp, 1.0 - kBceClamp);
    const double t = targets[i];
    sum -= t * std::log(s) + (1.0 - t) * std::log(1.0 - s);
  }
  return sum / static_cast<double>(scores.size());
}

void ProbeBatch::add(std::span<const double> input, std::span<const double> target) {
  if (input.size() != dim || target.size() != labels) {
    throw Error(ErrorCode::kDimensionMismatch, "probe batch row has the wrong shape");
  }
  x.insert(x.end(), input.begin(), input.end());
  targets.insert(targets.end(), target.begin(), target.end());
}

ProbeGradient probe_gradient(const ProbeBatch& batch, std::span<const std::size_t> rows,
                             const ProbeParams& params) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyDataset, "probe_gradient: empty batch");
  check_input(batch.dim, params);
  if (batch.labels != params.labels()) {
    throw Error(ErrorCode::kDimensionMismatch, "probe_gradient: label count mismatch");
  }
  const std::size_t in = params.input_dim(), hid = params.hidden(), out = params.labels();
  ProbeGradient g{ProbeParams(in, hid, out), 0.0};
  auto gw1 = g.grad.w1();
  auto gb1 = g.grad.b1();
  auto gw2 = g.grad.w2();
  auto gb2 = g.grad.b2();
  const auto w2 = params.w2();

  const double scale = 1.0 / (static_cast<double>(rows.size()) * static_cast<double>(out));
  std::vector<double> z1, h, s, dz2(out), dh(hid);
  for (std::size_t r : rows) {
    const auto x = batch.input(r);
    const auto t = batch.target(r);
    forward_into(x, params, z1, h, s);
    g.loss += bce_loss(s, t);

    for (std::size_t l = 0; l < out; ++l) dz2[l] = (s[l] - t[l]) * scale;
    std::fill(dh.begin(), dh.end(), 0.0);
    for (std::size_t l = 0; l < out; ++l) {
      const double d = dz2[l];
      gb2[l] += d;
      double* grow = gw2.data() + l * hid;
      const double* wrow = w2.data() + l * hid;
      for (std::size_t j = 0; j < hid; ++j) {
        grow[j] += d * h[j];
        dh[j] += d * wrow[j];
      }
    }
    for (std::size_t j = 0; j < hid; ++j) {
      if (z1[j] <= 0.0) continue;
      const double d = dh[j];
      gb1[j] += d;
      double* grow = gw1.data() + j * in;
      for (std::size_t k = 0; k < in; ++k) grow[k] += d * x[k];
    }
  }
  g.loss /= static_cast<double>(rows.size());
  return g;
}

ProbeGradient probe_gradient(const ProbeBatch& batch, const ProbeParams& params) {
  std::vector<std::size_t> rows(batch.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return probe_gradient(batch, rows, params);
}

double batch_loss(const ProbeBatch& batch, const ProbeParams& params) {
  if (batch.size() == 0) throw Error(ErrorCode::kEmptyDataset, "batch_loss: empty batch");
  check_input(batch.dim, params);
  std::vector<double> z1, h, s;
  double sum = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    forward_into(batch.input(i), params, z1, h, s);
    sum += bce_loss(s, batch.target(i));
  }
  return sum / static_cast<double>(batch.size());
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || batch_size == 0 || patience == 0 || max_epochs == 0 ||
      hidden == 0 || !(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0) ||
      !(epsilon > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "training hyperparameters must be positive (patience >= 1, betas in (0,1))");
  }
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               const TrainConfig& config) {
  if (params.size() != grads.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "adam_step: gradient shape mismatch");
  }
  if (state.m.size() != params.size()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
    state.t = 0;
  }
  ++state.t;
  const double b1 = config.beta1, b2 = config.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    state.m[i] = b1 * state.m[i] + (1.0 - b1) * g;
    state.v[i] = b2 * state.v[i] + (1.0 - b2) * g * g;
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    params[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.epsilon);
  }
}

void adam_step(ProbeParams& params, const ProbeParams& grads, AdamState& state,
               const TrainConfig& config) {
  if (!params.same_shape(grads)) {
    throw Error(ErrorCode::kDimensionMismatch, "adam_step: gradient shape mismatch");
  }
  adam_step(std::span<double>(params.flat()), std::span<const double>(grads.flat()), state, config);
}

TrainResult train_probe(const ProbeBatch& train, const ProbeBatch& valid, const TrainConfig& config) {
  config.validate();
  if (train.size() == 0) throw Error(ErrorCode::kEmptyDataset, "training set is empty");
  if (valid.size() == 0) throw Error(ErrorCode::kEmptyDataset, "validation set is empty");
  if (train.dim != valid.dim || train.labels != valid.labels) {
    throw Error(ErrorCode::kDimensionMismatch, "train and valid sets differ in shape");
  }

  TrainResult result;
  ProbeParams params = init_probe(train.dim, train.labels, config.seed, config.hidden);
  AdamState state;
  Rng rng(mix_seed(config.seed, 0x5348554646ULL));

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  double best = 0.0;
  std::size_t since_best = 0;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.shuffle(order);
    double train_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      const std::span<const std::size_t> rows(order.data() + start, end - start);
      auto g = probe_gradient(train, rows, params);
      train_sum += g.loss * static_cast<double>(rows.size());
      adam_step(params, g.grad, state, config);
    }
    const double valid_loss = batch_loss(valid, params);
    result.history.push_back({epoch, train_sum / static_cast<double>(order.size()), valid_loss});

    if (epoch == 1 || valid_loss < best) {
      best = valid_loss;
      result.params = params;
      result.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= config.patience) {
      break;
    }
  }
  result.best_valid_loss = best;
  return result;
}

ProbeBatch make_probe_batch(const DatasetManifest& manifest, const EmbeddingStore& store,
                            Split split) {
  ProbeBatch batch;
  batch.dim = store.dim();
  batch.labels = manifest.vocabulary.size();
  std::vector<double> x(batch.dim), t(batch.labels);
  for (const auto& item : manifest.items) {
    if (item.split != split) continue;
    auto row = store.find(item.id);
    if (!row) throw Error(ErrorCode::kMissingEmbedding, "no embedding for item " + item.id);
    const auto values = store.row(*row);
    std::copy(values.begin(), values.end(), x.begin());
    std::fill(t.begin(), t.end(), 0.0);
    item.labels.for_each([&](LabelId id) {
      if (id < t.size()) t[id] = 1.0;
    });
    batch.add(x, t);
  }
  return batch;
}

std::vector<double> probe_scores(const ProbeBatch& batch, const ProbeParams& params) {
  check_input(batch.dim, params);
  std::vector<double> out;
  out.reserve(batch.size() * params.labels());
  std::vector<double> z1, h, s;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    forward_into(batch.input(i), params, z1, h, s);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

EmbeddingStore extract_feature_store(const EmbeddingStore& store, const ProbeParams& params) {
  check_input(store.dim(), params);
  EmbeddingStore out(params.hidden());
  std::vector<float> row(params.hidden());
  for (std::size_t i = 0; i < store.size(); ++i) {
    const auto h = extract_probe_features(store.row(i), params);
    for (std::size_t j = 0; j < h.size(); ++j) row[j] = static_cast<float>(h[j]);
    out.add(store.id(i), row);
  }
  return out;
}

}  // namespace lcp
