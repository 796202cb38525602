// Copyright 2026 The SNC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SNC_ERROR_HPP_
#define SNC_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace snc {

enum class Errc {
  kAllZero,
  kNegativeEntry,
  kNotNormalized,
  kOutOfRange,
  kDimensionMismatch,
  kSupportMismatch,
  kInvalidParams,
  kInvalidStep,
  kUnknownAction,
  kUnknownConcept,
  kZeroEvidence,
  kEmptySR,
  kConceptAlreadySent,
  kUnknownSymbol,
  kTruncatedStream,
  kInvalidPrefix,
  kSchema,
  kParse,
  kIo,
  kInvalidConfig,
};

std::string_view errc_name(Errc code);

// All library failures surface as snc::Error; code() identifies the failure
// class so callers and tests can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace snc

#endif  // SNC_ERROR_HPP_
