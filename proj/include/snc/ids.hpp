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

#ifndef SNC_IDS_HPP_
#define SNC_IDS_HPP_

#include <cstddef>

namespace snc {

// Strong index types. The underlying value is the zero-based row/column of the
// corresponding matrix axis.
enum class ActionId : std::size_t {};
enum class ConceptId : std::size_t {};
enum class SymbolId : std::size_t {};

constexpr std::size_t index(ActionId id) noexcept {
  return static_cast<std::size_t>(id);
}
constexpr std::size_t index(ConceptId id) noexcept {
  return static_cast<std::size_t>(id);
}
constexpr std::size_t index(SymbolId id) noexcept {
  return static_cast<std::size_t>(id);
}

}  // namespace snc

#endif  // SNC_IDS_HPP_
