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

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lcproto/error.hpp"

namespace lcp {

using LabelId = std::uint16_t;

inline constexpr std::size_t kMaxLabels = 1024;

// Ordered list of unique, non-empty label names. A label's id is its position.
class LabelVocabulary {
 public:
  LabelVocabulary() = default;
  // Throws Error(kVocabulary) on empty/duplicate names or more than kMaxLabels.
  explicit LabelVocabulary(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(LabelId id) const { return names_.at(id); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<LabelId> find(std::string_view name) const;
  // Throws Error(kVocabulary) for unknown names.
  LabelId id_of(std::string_view name) const;

  bool operator==(const LabelVocabulary& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, LabelId> index_;
};

// Fixed-width bitmask over label ids. Iteration is by ascending id.
class LabelSet {
 public:
  static constexpr std::size_t kWords = kMaxLabels / 64;

  constexpr LabelSet() = default;
  LabelSet(std::initializer_list<LabelId> ids) {
    for (LabelId id : ids) insert(id);
  }
  static LabelSet from_ids(std::span<const LabelId> ids) {
    LabelSet s;
    for (LabelId id : ids) s.insert(id);
    return s;
  }

  void insert(LabelId id) {
    if (id >= kMaxLabels) throw Error(ErrorCode::kVocabulary, "label id beyond capacity");
    words_[id >> 6] |= (std::uint64_t{1} << (id & 63));
  }
  void erase(LabelId id) {
    if (id < kMaxLabels) words_[id >> 6] &= ~(std::uint64_t{1} << (id & 63));
  }
  bool contains(LabelId id) const {
    return id < kMaxLabels && (words_[id >> 6] >> (id & 63)) & 1U;
  }

  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  bool is_subset_of(const LabelSet& other) const noexcept {
    for (std::size_t i = 0; i < kWords; ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }
  LabelSet operator&(const LabelSet& other) const noexcept {
    LabelSet r;
    for (std::size_t i = 0; i < kWords; ++i) r.words_[i] = words_[i] & other.words_[i];
    return r;
  }
  LabelSet operator|(const LabelSet& other) const noexcept {
    LabelSet r;
    for (std::size_t i = 0; i < kWords; ++i) r.words_[i] = words_[i] | other.words_[i];
    return r;
  }

  // Highest id + 1, or 0 when empty.
  std::size_t extent_bound() const noexcept;

  std::vector<LabelId> ids() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < kWords; ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        const int b = std::countr_zero(w);
        f(static_cast<LabelId>(i * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
  }

  bool operator==(const LabelSet& other) const noexcept = default;

  // Lexicographic comparison of the ascending id tuples; a proper prefix
  // orders first, so {1} < {1,2} < {1,3} < {2}.
  static std::strong_ordering lex_compare(const LabelSet& a, const LabelSet& b) noexcept;

  // Cardinality first, then lex_compare. This is the canonical class order.
  static std::strong_ordering canonical_compare(const LabelSet& a, const LabelSet& b) noexcept {
    const auto na = a.size(), nb = b.size();
    if (na != nb) return na <=> nb;
    return lex_compare(a, b);
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 0x84222325CBF29CE4ULL;
    for (auto w : words_) {
      h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  const std::array<std::uint64_t, kWords>& words() const noexcept { return words_; }

 private:
  std::array<std::uint64_t, kWords> words_{};
};

struct LabelSetHash {
  std::size_t operator()(const LabelSet& s) const noexcept { return s.hash(); }
};

struct CanonicalLess {
  bool operator()(const LabelSet& a, const LabelSet& b) const noexcept {
    return LabelSet::canonical_compare(a, b) < 0;
  }
};

// Renders "{a,b,c}" with vocabulary names, or raw ids when vocab is null.
std::string format_labels(const LabelSet& s, const LabelVocabulary* vocab = nullptr);

}  // namespace lcp
