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

// On-disk formats.
//
// Embedding store (.lcpe), little-endian:
//   "LCPE" | u16 version (1) | u32 dim | u64 count
//   count x ( u16 id_len | id bytes (UTF-8) | dim x f32 )
//
// Probe parameters (.lcpp), little-endian:
//   "LCPP" | u16 version (1) | u32 input_dim | u32 hidden | u32 labels
//   f32 values: w1 (hidden x input_dim), b1, w2 (labels x hidden), b2
//
// Manifest: one JSON object per line, {"id", "split", "labels": [names]};
// vocabulary: one label name per line, line order defines label ids.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lcproto/dataset.hpp"
#include "lcproto/lcp_engine.hpp"
#include "lcproto/metrics.hpp"
#include "lcproto/probe.hpp"

namespace lcp {

inline constexpr std::uint16_t kStoreVersion = 1;
inline constexpr std::uint16_t kParamsVersion = 1;

std::vector<std::uint8_t> encode_store(const EmbeddingStore& store);
EmbeddingStore decode_store(std::span<const std::uint8_t> bytes);
void write_store(const EmbeddingStore& store, const std::filesystem::path& path);
EmbeddingStore read_store(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_params(const ProbeParams& params);
ProbeParams decode_params(std::span<const std::uint8_t> bytes);
void write_params(const ProbeParams& params, const std::filesystem::path& path);
ProbeParams read_params(const std::filesystem::path& path);

std::string encode_vocabulary(const LabelVocabulary& vocab);
LabelVocabulary decode_vocabulary(const std::string& text);

std::string encode_manifest(const DatasetManifest& manifest);
DatasetManifest decode_manifest(const std::string& text, LabelVocabulary vocab);
void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& manifest_path,
                    const std::filesystem::path& vocab_path);
DatasetManifest read_manifest(const std::filesystem::path& manifest_path,
                              const std::filesystem::path& vocab_path);

// Predictions, one JSON object per line: {"id", "predicted", "truth", "distance"}.
std::string encode_predictions(std::span<const Prediction> predictions,
                               std::span<const QueryItem> queries, const LabelVocabulary& vocab);
std::vector<LabelSetPair> decode_predictions(const std::string& text, const LabelVocabulary& vocab);

// Scores, one JSON object per line: {"id", "scores": [per label], "truth": [names]}.
std::string encode_scores(const ScoreMatrix& m, std::span<const std::string> ids,
                          const LabelVocabulary& vocab);
ScoreMatrix decode_scores(const std::string& text, const LabelVocabulary& vocab);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
std::string read_file_text(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file_text(const std::filesystem::path& path, const std::string& text);

}  // namespace lcp
