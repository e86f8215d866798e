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

#include "lcproto/data_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "lcproto/error.hpp"

namespace lcp {
namespace {

using json = nlohmann::ordered_json;

constexpr char kStoreMagic[4] = {'L', 'C', 'P', 'E'};
constexpr char kParamsMagic[4] = {'L', 'C', 'P', 'P'};

class ByteWriter {
 public:
  void raw(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  template <typename T>
  void le(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      out_.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(v) >> (8 * i)));
    }
  }
  void f32(float v) { le(std::bit_cast<std::uint32_t>(v)); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

  void need(std::size_t n, const char* what) const {
    if (remaining() < n) throw CorruptRecordError(pos_, std::string("truncated ") + what);
  }
  template <typename T>
  T le(const char* what) {
    need(sizeof(T), what);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    }
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  float f32(const char* what) { return std::bit_cast<float>(le<std::uint32_t>(what)); }
  std::string str(std::size_t n, const char* what) {
    need(n, what);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  bool magic_is(const char (&magic)[4]) {
    if (remaining() < 4 || std::memcmp(bytes_.data() + pos_, magic, 4) != 0) return false;
    pos_ += 4;
    return true;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::vector<std::string> label_names(const LabelSet& s, const LabelVocabulary& vocab) {
  std::vector<std::string> out;
  s.for_each([&](LabelId id) { out.push_back(vocab.name(id)); });
  return out;
}

LabelSet parse_label_list(const json& arr, const LabelVocabulary& vocab, std::size_t line) {
  if (!arr.is_array()) {
    throw Error(ErrorCode::kBadManifest, "line " + std::to_string(line) + ": labels must be an array");
  }
  LabelSet s;
  for (const auto& v : arr) {
    if (!v.is_string()) {
      throw Error(ErrorCode::kBadManifest, "line " + std::to_string(line) + ": label must be a string");
    }
    auto id = vocab.find(v.get<std::string>());
    if (!id) {
      throw Error(ErrorCode::kBadManifest, "line " + std::to_string(line) + ": unknown label '" +
                                               v.get<std::string>() + "'");
    }
    s.insert(*id);
  }
  return s;
}

// Calls f(line_number, parsed_object) for every non-blank line.
template <typename F>
void for_each_json_line(const std::string& text, F&& f) {
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kBadManifest, "line " + std::to_string(number) + ": " + e.what());
    }
    if (!obj.is_object()) {
      throw Error(ErrorCode::kBadManifest, "line " + std::to_string(number) + ": not an object");
    }
    f(number, obj);
  }
}

std::string required_string(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw Error(ErrorCode::kBadManifest,
                "line " + std::to_string(line) + ": missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

const json& required_field(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorCode::kBadManifest,
                "line " + std::to_string(line) + ": missing field '" + key + "'");
  }
  return *it;
}

}  // namespace

std::vector<std::uint8_t> encode_store(const EmbeddingStore& store) {
  ByteWriter w;
  w.raw(kStoreMagic, 4);
  w.le<std::uint16_t>(kStoreVersion);
  w.le<std::uint32_t>(static_cast<std::uint32_t>(store.dim()));
  w.le<std::uint64_t>(store.size());
  for (std::size_t i = 0; i < store.size(); ++i) {
    const auto& id = store.id(i);
    if (id.empty() || id.size() > UINT16_MAX) {
      throw Error(ErrorCode::kInvalidArgument, "embedding id length out of range: '" + id + "'");
    }
    w.le<std::uint16_t>(static_cast<std::uint16_t>(id.size()));
    w.raw(id.data(), id.size());
    for (float v : store.row(i)) {
      if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteValue, "non-finite value in " + id);
      w.f32(v);
    }
  }
  return w.take();
}

EmbeddingStore decode_store(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (!r.magic_is(kStoreMagic)) throw Error(ErrorCode::kBadMagic, "not an LCPE embedding store");
  const auto version = r.le<std::uint16_t>("header");
  if (version != kStoreVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "embedding store version " + std::to_string(version) + " is not supported");
  }
  const std::size_t dim_offset = r.offset();
  const auto dim = r.le<std::uint32_t>("header");
  const auto count = r.le<std::uint64_t>("header");
  if (dim == 0) throw CorruptRecordError(dim_offset, "dim is 0");
  // Each record needs at least 2 + 1 + 4*dim bytes.
  const std::uint64_t min_record = 3 + 4ULL * dim;
  if (count > r.remaining() / min_record) {
    throw CorruptRecordError(r.offset(), "record count " + std::to_string(count) +
                                             " exceeds the file size");
  }

  EmbeddingStore store(dim);
  std::vector<float> row(dim);
  std::unordered_set<std::string> seen;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::size_t start = r.offset();
    const auto len = r.le<std::uint16_t>("record id length");
    if (len == 0) throw CorruptRecordError(start, "empty record id");
    auto id = r.str(len, "record id");
    for (auto& v : row) v = r.f32("record values");
    if (!all_finite(row)) throw Error(ErrorCode::kNonFiniteValue, "non-finite value in record " + id);
    if (!seen.insert(id).second) throw CorruptRecordError(start, "duplicate id " + id);
    store.add(std::move(id), row);
  }
  if (r.remaining() != 0) throw CorruptRecordError(r.offset(), "trailing bytes after last record");
  return store;
}

std::vector<std::uint8_t> encode_params(const ProbeParams& params) {
  ByteWriter w;
  w.raw(kParamsMagic, 4);
  w.le<std::uint16_t>(kParamsVersion);
  w.le<std::uint32_t>(static_cast<std::uint32_t>(params.input_dim()));
  w.le<std::uint32_t>(static_cast<std::uint32_t>(params.hidden()));
  w.le<std::uint32_t>(static_cast<std::uint32_t>(params.labels()));
  for (double v : params.flat()) {
    const auto f = static_cast<float>(v);
    if (!std::isfinite(f)) throw Error(ErrorCode::kNonFiniteValue, "non-finite probe parameter");
    w.f32(f);
  }
  return w.take();
}

ProbeParams decode_params(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  if (!r.magic_is(kParamsMagic)) throw Error(ErrorCode::kBadMagic, "not an LCPP parameter file");
  const auto version = r.le<std::uint16_t>("header");
  if (version != kParamsVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "parameter file version " + std::to_string(version) + " is not supported");
  }
  const std::size_t shape_offset = r.offset();
  const std::uint64_t in = r.le<std::uint32_t>("header");
  const std::uint64_t hid = r.le<std::uint32_t>("header");
  const std::uint64_t out = r.le<std::uint32_t>("header");
  if (in == 0 || hid == 0 || out == 0) throw CorruptRecordError(shape_offset, "zero dimension");
  const std::uint64_t n = hid * in + hid + out * hid + out;
  if (n > r.remaining() / 4) throw CorruptRecordError(r.offset(), "truncated parameter values");
  ProbeParams p(in, hid, out);
  for (double& v : p.flat()) {
    const float f = r.f32("parameter values");
    if (!std::isfinite(f)) throw Error(ErrorCode::kNonFiniteValue, "non-finite probe parameter");
    v = f;
  }
  if (r.remaining() != 0) throw CorruptRecordError(r.offset(), "trailing bytes after parameters");
  return p;
}

std::string encode_vocabulary(const LabelVocabulary& vocab) {
  std::string out;
  for (const auto& name : vocab.names()) {
    if (name.find('\n') != std::string::npos) {
      throw Error(ErrorCode::kVocabulary, "label name contains a newline");
    }
    out += name;
    out += '\n';
  }
  return out;
}

LabelVocabulary decode_vocabulary(const std::string& text) {
  std::vector<std::string> names;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    names.push_back(line);
  }
  return LabelVocabulary(std::move(names));
}

std::string encode_manifest(const DatasetManifest& manifest) {
  std::string out;
  for (const auto& item : manifest.items) {
    json obj;
    obj["id"] = item.id;
    obj["split"] = split_name(item.split);
    obj["labels"] = label_names(item.labels, manifest.vocabulary);
    out += obj.dump();
    out += '\n';
  }
  return out;
}

DatasetManifest decode_manifest(const std::string& text, LabelVocabulary vocab) {
  DatasetManifest m{std::move(vocab), {}};
  for_each_json_line(text, [&](std::size_t line, const json& obj) {
    ManifestItem item;
    item.id = required_string(obj, "id", line);
    const auto split = parse_split(required_string(obj, "split", line));
    if (!split) {
      throw Error(ErrorCode::kBadManifest,
                  "line " + std::to_string(line) + ": split must be train, valid or test");
    }
    item.split = *split;
    item.labels = parse_label_list(required_field(obj, "labels", line), m.vocabulary, line);
    m.items.push_back(std::move(item));
  });
  m.validate();
  return m;
}

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& manifest_path,
                    const std::filesystem::path& vocab_path) {
  write_file_text(vocab_path, encode_vocabulary(manifest.vocabulary));
  write_file_text(manifest_path, encode_manifest(manifest));
}

DatasetManifest read_manifest(const std::filesystem::path& manifest_path,
                              const std::filesystem::path& vocab_path) {
  auto vocab = decode_vocabulary(read_file_text(vocab_path));
  return decode_manifest(read_file_text(manifest_path), std::move(vocab));
}

std::string encode_predictions(std::span<const Prediction> predictions,
                               std::span<const QueryItem> queries, const LabelVocabulary& vocab) {
  if (predictions.size() != queries.size()) {
    throw Error(ErrorCode::kInvalidArgument, "predictions and queries differ in length");
  }
  std::string out;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    json obj;
    obj["id"] = predictions[i].query_id;
    obj["predicted"] = label_names(predictions[i].labels, vocab);
    obj["truth"] = queries[i].truth ? label_names(*queries[i].truth, vocab) : std::vector<std::string>{};
    obj["distance"] = predictions[i].distance;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::vector<LabelSetPair> decode_predictions(const std::string& text, const LabelVocabulary& vocab) {
  std::vector<LabelSetPair> out;
  for_each_json_line(text, [&](std::size_t line, const json& obj) {
    required_string(obj, "id", line);
    out.emplace_back(parse_label_list(required_field(obj, "predicted", line), vocab, line),
                     parse_label_list(required_field(obj, "truth", line), vocab, line));
  });
  return out;
}

std::string encode_scores(const ScoreMatrix& m, std::span<const std::string> ids,
                          const LabelVocabulary& vocab) {
  m.validate();
  if (ids.size() != m.items || vocab.size() != m.labels) {
    throw Error(ErrorCode::kInvalidArgument, "score matrix shape does not match ids/vocabulary");
  }
  std::string out;
  for (std::size_t i = 0; i < m.items; ++i) {
    json obj;
    obj["id"] = ids[i];
    std::vector<double> row(m.scores.begin() + static_cast<std::ptrdiff_t>(i * m.labels),
                            m.scores.begin() + static_cast<std::ptrdiff_t>((i + 1) * m.labels));
    obj["scores"] = row;
    LabelSet truth;
    for (std::size_t l = 0; l < m.labels; ++l)
      if (m.positive(i, l)) truth.insert(static_cast<LabelId>(l));
    obj["truth"] = label_names(truth, vocab);
    out += obj.dump();
    out += '\n';
  }
  return out;
}

ScoreMatrix decode_scores(const std::string& text, const LabelVocabulary& vocab) {
  ScoreMatrix m;
  m.labels = vocab.size();
  for_each_json_line(text, [&](std::size_t line, const json& obj) {
    required_string(obj, "id", line);
    const auto& scores = required_field(obj, "scores", line);
    if (!scores.is_array() || scores.size() != m.labels) {
      throw Error(ErrorCode::kBadManifest, "line " + std::to_string(line) + ": expected " +
                                               std::to_string(m.labels) + " scores");
    }
    for (const auto& s : scores) {
      if (!s.is_number()) {
        throw Error(ErrorCode::kBadManifest, "line " + std::to_string(line) + ": non-numeric score");
      }
      m.scores.push_back(s.get<double>());
    }
    const auto truth = parse_label_list(required_field(obj, "truth", line), vocab, line);
    for (std::size_t l = 0; l < m.labels; ++l) {
      m.truth.push_back(truth.contains(static_cast<LabelId>(l)) ? 1 : 0);
    }
    ++m.items;
  });
  return m;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed: " + path.string());
  return bytes;
}

std::string read_file_text(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  return std::string(bytes.begin(), bytes.end());
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

void write_file_text(const std::filesystem::path& path, const std::string& text) {
  write_file_bytes(path, std::span<const std::uint8_t>(
                             reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void write_store(const EmbeddingStore& store, const std::filesystem::path& path) {
  write_file_bytes(path, encode_store(store));
}

EmbeddingStore read_store(const std::filesystem::path& path) {
  return decode_store(read_file_bytes(path));
}

void write_params(const ProbeParams& params, const std::filesystem::path& path) {
  write_file_bytes(path, encode_params(params));
}

ProbeParams read_params(const std::filesystem::path& path) {
  return decode_params(read_file_bytes(path));
}

}  // namespace lcp
