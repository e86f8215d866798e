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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lcp {

enum class ErrorCode : int {
  kInvalidArgument = 1,
  kVocabulary,
  kEmptySupport,
  kLabelCapExceeded,
  kClassNotInL,
  kZeroNormVector,
  kEmptyIndex,
  kDimensionMismatch,
  kInsufficientItems,
  kMissingEmbedding,
  kNotEnoughEligibleLabels,
  kAttemptLimit,
  kEmptyDataset,
  kEmptyInput,
  kNoValidLabels,
  kBadMagic,
  kUnsupportedVersion,
  kCorruptRecord,
  kNonFiniteValue,
  kBadManifest,
  kSpecInfeasible,
  kIo,
  kEquivalenceViolation,
};

const char* error_code_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above; the
// C API maps them one-to-one onto lcp_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the store/params readers. `offset` is the byte position where the
// reader stopped making sense of the input.
class CorruptRecordError : public Error {
 public:
  CorruptRecordError(std::uint64_t offset, const std::string& what)
      : Error(ErrorCode::kCorruptRecord,
              "corrupt record at byte offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

}  // namespace lcp
