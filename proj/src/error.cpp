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

#include "snc/error.hpp"

namespace snc {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kAllZero: return "AllZero";
    case Errc::kNegativeEntry: return "NegativeEntry";
    case Errc::kNotNormalized: return "NotNormalized";
    case Errc::kOutOfRange: return "OutOfRange";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kSupportMismatch: return "SupportMismatch";
    case Errc::kInvalidParams: return "InvalidParams";
    case Errc::kInvalidStep: return "InvalidStep";
    case Errc::kUnknownAction: return "UnknownAction";
    case Errc::kUnknownConcept: return "UnknownConcept";
    case Errc::kZeroEvidence: return "ZeroEvidence";
    case Errc::kEmptySR: return "EmptySR";
    case Errc::kConceptAlreadySent: return "ConceptAlreadySent";
    case Errc::kUnknownSymbol: return "UnknownSymbol";
    case Errc::kTruncatedStream: return "TruncatedStream";
    case Errc::kInvalidPrefix: return "InvalidPrefix";
    case Errc::kSchema: return "Schema";
    case Errc::kParse: return "Parse";
    case Errc::kIo: return "Io";
    case Errc::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace snc
