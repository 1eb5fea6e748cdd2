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

#ifndef CODESOPH_STATEMENT_KIND_H_
#define CODESOPH_STATEMENT_KIND_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace codesoph {

// Statement and expression construct kinds. The first eight values are the
// behavior label classes; keep them first and in this order, feature columns
// and label vectors index by the enum value.
enum class StatementKind : std::uint8_t {
  kReturn = 0,
  kAssign,
  kAugAssign,
  kRaise,
  kIf,
  kCall,
  kSubscript,
  kBinOp,
  kFor,
  kWhile,
  kExpr,
  kBreak,
  kContinue,
  kPass,
  kOther,
};

inline constexpr int kNumStatementKinds = 15;
inline constexpr int kNumLabelClasses = 8;

constexpr int Index(StatementKind kind) { return static_cast<int>(kind); }

constexpr bool IsLabelClass(StatementKind kind) {
  return Index(kind) < kNumLabelClasses;
}

constexpr bool IsPredicateKind(StatementKind kind) {
  return kind == StatementKind::kIf || kind == StatementKind::kFor ||
         kind == StatementKind::kWhile;
}

std::string_view Name(StatementKind kind);
std::optional<StatementKind> StatementKindFromName(std::string_view name);

// Small bitset over StatementKind with value semantics.
class KindSet {
 public:
  constexpr KindSet() = default;

  constexpr void Insert(StatementKind k) { bits_ |= Bit(k); }
  constexpr bool Contains(StatementKind k) const { return bits_ & Bit(k); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr KindSet& operator|=(KindSet other) {
    bits_ |= other.bits_;
    return *this;
  }
  constexpr KindSet LabelClassesOnly() const {
    KindSet out;
    out.bits_ = bits_ & ((1u << kNumLabelClasses) - 1);
    return out;
  }
  constexpr std::uint32_t bits() const { return bits_; }
  int size() const;

  friend constexpr bool operator==(KindSet a, KindSet b) = default;

 private:
  static constexpr std::uint32_t Bit(StatementKind k) {
    return 1u << Index(k);
  }
  std::uint32_t bits_ = 0;
};

// Label classes in canonical order.
inline constexpr std::array<StatementKind, kNumLabelClasses> kLabelClasses = {
    StatementKind::kReturn, StatementKind::kAssign,    StatementKind::kAugAssign,
    StatementKind::kRaise,  StatementKind::kIf,        StatementKind::kCall,
    StatementKind::kSubscript, StatementKind::kBinOp,
};

}  // namespace codesoph

#endif  // CODESOPH_STATEMENT_KIND_H_
