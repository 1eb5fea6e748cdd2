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


#ifndef CODESOPH_SYNTHETIC_H_
#define CODESOPH_SYNTHETIC_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "codesoph/features.h"
#include "codesoph/gcn.h"

namespace codesoph {

// A generated method, the edge it is split at, and the resulting example.
//
// Level 1 rule: the edge is positive exactly when the before half holds a
// node using a parameter in an Assign statement and no Predicate node.
//
// Level 2 rule: class c is present exactly when the after half uses an input
// in the column assigned to c:
//   Return    attribute in a Return       (`return self.c`)
//   Assign    parameter in an Assign      (`x = p`)
//   AugAssign parameter in an AugAssign   (`z += p`)
//   Raise     parameter in a Raise        (`raise p`)
//   If        parameter in an If          (`if p:`)
//   Call      attribute inside a Call     (`log(self.d)`)
//   Subscript parameter inside a Subscript (`log(p[0])`)
//   BinOp     attribute inside a BinOp    (`w = self.e + 1`)
// Level 2 classes are drawn independently with probability 1/2.
struct SyntheticItem {
  std::string source;
  Edge edge;
  SplitExample split;
};

std::vector<SyntheticItem> GenerateSynthetic(int n, std::uint64_t seed,
                                             Task task);

int PlantedLevel1(const SplitExample& split);
std::array<int, kNumLabelClasses> PlantedLevel2(const SplitExample& split);

// The column each Level 2 class is tied to.
int PlantedColumn(StatementKind label_class);

// Source and edge as an example whose halves follow from the CFG.
SplitExample SplitSource(const std::string& source, Edge edge);

}  // namespace codesoph

#endif  // CODESOPH_SYNTHETIC_H_
