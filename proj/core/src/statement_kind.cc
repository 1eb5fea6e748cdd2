// Copyright 2026 The Codesoph Authors.
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

#include "codesoph/statement_kind.h"

#include <bit>

namespace codesoph {

namespace {
constexpr std::array<std::string_view, kNumStatementKinds> kNames = {
    "Return", "Assign", "AugAssign", "Raise", "If",       "Call",
    "Subscript", "BinOp", "For",     "While", "Expr",     "Break",
    "Continue",  "Pass",  "Other",
};
}  // namespace

std::string_view Name(StatementKind kind) { return kNames[Index(kind)]; }

std::optional<StatementKind> StatementKindFromName(std::string_view name) {
  for (int i = 0; i < kNumStatementKinds; ++i) {
    if (kNames[i] == name) return static_cast<StatementKind>(i);
  }
  return std::nullopt;
}

int KindSet::size() const { return std::popcount(bits_); }

}  // namespace codesoph
