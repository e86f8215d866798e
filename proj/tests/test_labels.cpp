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

#include <doctest.h>

#include <algorithm>

#include "lcproto/episode.hpp"
#include "lcproto/error.hpp"
#include "lcproto/labels.hpp"
#include "lcproto/random.hpp"
#include "oracles.hpp"

using namespace lcp;

namespace {

std::vector<LabelId> random_ids(Rng& rng, std::size_t max_count, std::size_t universe) {
  std::vector<LabelId> ids;
  const std::size_t n = rng.uniform_index(max_count + 1);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(static_cast<LabelId>(rng.uniform_index(universe)));
  return ids;
}

Episode minimal_episode() {
  Episode ep;
  ep.vocabulary = LabelVocabulary({"A"});
  ep.support.push_back({"s0", {1.0f, 0.0f}, LabelSet{0}});
  ep.queries.push_back({"q0", {0.0f, 1.0f}, LabelSet{0}});
  ep.n_way = 1;
  ep.k_shot = 1;
  return ep;
}

}  // namespace

TEST_CASE("vocabulary rejects empty, duplicate and oversized name lists") {
  CHECK_THROWS_AS(LabelVocabulary(std::vector<std::string>{}), Error);
  CHECK_THROWS_AS(LabelVocabulary({"a", "a"}), Error);
  CHECK_THROWS_AS(LabelVocabulary({"a", ""}), Error);
  std::vector<std::string> many;
  for (std::size_t i = 0; i <= kMaxLabels; ++i) many.push_back("l" + std::to_string(i));
  try {
    LabelVocabulary v(many);
    FAIL("expected a vocabulary error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kVocabulary);
  }
  many.pop_back();
  CHECK(LabelVocabulary(many).size() == kMaxLabels);

  LabelVocabulary v({"rock", "jazz"});
  CHECK(v.id_of("jazz") == 1);
  CHECK_FALSE(v.find("pop").has_value());
  CHECK_THROWS_AS(v.id_of("pop"), Error);
}

TEST_CASE("label sets compare and hash independently of insertion order") {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    auto ids = random_ids(rng, 20, 300);
    LabelSet a = LabelSet::from_ids(ids);
    std::reverse(ids.begin(), ids.end());
    rng.shuffle(ids);
    LabelSet b = LabelSet::from_ids(ids);
    CHECK(a == b);
    CHECK(a.hash() == b.hash());
    CHECK(LabelSet::canonical_compare(a, b) == 0);
    std::vector<int> sorted(ids.begin(), ids.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    CHECK(oracle::ids_of(a) == sorted);
    CHECK(a.size() == sorted.size());
  }
}

TEST_CASE("subset test agrees with an element-wise oracle") {
  Rng rng(12);
  for (int trial = 0; trial < 2000; ++trial) {
    // Small universes make subsets common.
    const std::size_t universe = trial % 2 ? 8 : 64;
    const auto a = LabelSet::from_ids(random_ids(rng, 64, universe));
    const auto b = LabelSet::from_ids(random_ids(rng, 64, universe));
    const auto ia = oracle::ids_of(a), ib = oracle::ids_of(b);
    bool naive = true;
    for (int id : ia) naive = naive && std::find(ib.begin(), ib.end(), id) != ib.end();
    CHECK(a.is_subset_of(b) == naive);
    CHECK(a.is_subset_of(a | b));
    CHECK((a & b).is_subset_of(a));
  }
}

TEST_CASE("lexicographic order matches std::vector comparison of id tuples") {
  Rng rng(13);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t universe = trial % 3 == 0 ? 6 : (trial % 3 == 1 ? 70 : 1024);
    const auto a = LabelSet::from_ids(random_ids(rng, 5, universe));
    const auto b = LabelSet::from_ids(random_ids(rng, 5, universe));
    const auto ia = oracle::ids_of(a), ib = oracle::ids_of(b);
    const auto expect = ia <=> ib;
    CHECK((LabelSet::lex_compare(a, b) < 0) == (expect < 0));
    CHECK((LabelSet::lex_compare(a, b) == 0) == (expect == 0));
  }
  CHECK(LabelSet::lex_compare(LabelSet{1}, LabelSet{1, 2}) < 0);
  CHECK(LabelSet::lex_compare(LabelSet{1, 2}, LabelSet{1, 3}) < 0);
  CHECK(LabelSet::lex_compare(LabelSet{1, 3}, LabelSet{2}) < 0);
  CHECK(LabelSet::canonical_compare(LabelSet{5}, LabelSet{0, 1}) < 0);
}

TEST_CASE("label ids beyond capacity are rejected") {
  LabelSet s;
  CHECK_THROWS_AS(s.insert(static_cast<LabelId>(kMaxLabels)), Error);
  s.insert(static_cast<LabelId>(kMaxLabels - 1));
  CHECK(s.extent_bound() == kMaxLabels);
  CHECK_FALSE(s.contains(static_cast<LabelId>(5000)));
}

TEST_CASE("validate_episode: minimal episode is valid") {
  CHECK(validate_episode(minimal_episode()).empty());
}

TEST_CASE("validate_episode: under-covered label is reported") {
  Episode ep;
  ep.vocabulary = LabelVocabulary({"A", "B"});
  ep.k_shot = 3;
  ep.n_way = 2;
  for (int i = 0; i < 3; ++i) {
    LabelSet s{0};
    if (i < 2) s.insert(1);
    ep.support.push_back({"s" + std::to_string(i), {1.0f, 0.5f}, s});
  }
  const auto report = validate_episode(ep);
  REQUIRE(report.size() == 1);
  CHECK(report[0].message == "label B: 2 < 3 shots");
}

TEST_CASE("validate_episode: support/query overlap is reported") {
  auto ep = minimal_episode();
  ep.queries.push_back({"s0", {1.0f, 1.0f}, std::nullopt});
  const auto report = validate_episode(ep);
  REQUIRE(report.size() == 1);
  CHECK(report[0].message == "overlap: s0");
}

TEST_CASE("validate_episode is total on adversarial input") {
  Rng rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    Episode ep;
    if (trial % 5) ep.vocabulary = LabelVocabulary({"a", "b", "c"});
    ep.k_shot = rng.uniform_index(5);
    const std::size_t n = rng.uniform_index(6);
    for (std::size_t i = 0; i < n; ++i) {
      Embedding e(rng.uniform_index(4));
      for (auto& v : e) {
        const auto pick = rng.uniform_index(4);
        v = pick == 0 ? std::numeric_limits<float>::quiet_NaN()
                      : pick == 1 ? std::numeric_limits<float>::infinity() : 1.0f;
      }
      ep.support.push_back({"x" + std::to_string(rng.uniform_index(3)), e,
                            LabelSet::from_ids(random_ids(rng, 3, 900))});
      ep.queries.push_back({"x" + std::to_string(rng.uniform_index(3)), e,
                            LabelSet::from_ids(random_ids(rng, 2, 900))});
    }
    CHECK_NOTHROW(validate_episode(ep));
  }
}
