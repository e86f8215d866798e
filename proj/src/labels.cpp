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

#include "lcproto/labels.hpp"

#include <bit>

#include "lcproto/error.hpp"

namespace lcp {

LabelVocabulary::LabelVocabulary(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw Error(ErrorCode::kVocabulary, "vocabulary is empty");
  if (names_.size() > kMaxLabels) {
    throw Error(ErrorCode::kVocabulary, "vocabulary has " + std::to_string(names_.size()) +
                                            " labels; capacity is " + std::to_string(kMaxLabels));
  }
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) {
      throw Error(ErrorCode::kVocabulary, "empty label name at position " + std::to_string(i));
    }
    if (!index_.emplace(names_[i], static_cast<LabelId>(i)).second) {
      throw Error(ErrorCode::kVocabulary, "duplicate label name '" + names_[i] + "'");
    }
  }
}

std::optional<LabelId> LabelVocabulary::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LabelId LabelVocabulary::id_of(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw Error(ErrorCode::kVocabulary, "unknown label '" + std::string(name) + "'");
}

std::size_t LabelSet::extent_bound() const noexcept {
  for (std::size_t i = kWords; i-- > 0;) {
    if (words_[i]) return i * 64 + 64 - static_cast<std::size_t>(std::countl_zero(words_[i]));
  }
  return 0;
}

std::vector<LabelId> LabelSet::ids() const {
  std::vector<LabelId> out;
  for_each([&](LabelId id) { out.push_back(id); });
  return out;
}

std::strong_ordering LabelSet::lex_compare(const LabelSet& a, const LabelSet& b) noexcept {
  for (std::size_t i = 0; i < kWords; ++i) {
    const std::uint64_t diff = a.words_[i] ^ b.words_[i];
    if (!diff) continue;
    const int bit = std::countr_zero(diff);
    const bool a_has = (a.words_[i] >> bit) & 1U;
    const LabelSet& other = a_has ? b : a;
    // Does the set lacking the first differing id continue past it? If so the
    // holder of that id is smaller; otherwise the other set is a proper prefix.
    bool other_continues = false;
    const std::uint64_t above = (bit == 63) ? 0 : (~std::uint64_t{0} << (bit + 1));
    if (other.words_[i] & above) other_continues = true;
    for (std::size_t j = i + 1; j < kWords && !other_continues; ++j) {
      if (other.words_[j]) other_continues = true;
    }
    const bool a_smaller = a_has ? other_continues : !other_continues;
    return a_smaller ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string format_labels(const LabelSet& s, const LabelVocabulary* vocab) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](LabelId id) {
    if (!first) out += ',';
    first = false;
    if (vocab && id < vocab->size()) {
      out += vocab->name(id);
    } else {
      out += std::to_string(id);
    }
  });
  out += '}';
  return out;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kVocabulary: return "VocabularyError";
    case ErrorCode::kEmptySupport: return "EmptySupport";
    case ErrorCode::kLabelCapExceeded: return "LabelCapExceeded";
    case ErrorCode::kClassNotInL: return "ClassNotInL";
    case ErrorCode::kZeroNormVector: return "ZeroNormVector";
    case ErrorCode::kEmptyIndex: return "EmptyIndex";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInsufficientItems: return "InsufficientItems";
    case ErrorCode::kMissingEmbedding: return "MissingEmbedding";
    case ErrorCode::kNotEnoughEligibleLabels: return "NotEnoughEligibleLabels";
    case ErrorCode::kAttemptLimit: return "AttemptLimit";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kNoValidLabels: return "NoValidLabels";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kCorruptRecord: return "CorruptRecord";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kBadManifest: return "BadManifest";
    case ErrorCode::kSpecInfeasible: return "SpecInfeasible";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kEquivalenceViolation: return "EquivalenceViolation";
  }
  return "Unknown";
}

}  // namespace lcp
