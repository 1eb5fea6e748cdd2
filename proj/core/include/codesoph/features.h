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


#ifndef CODESOPH_FEATURES_H_
#define CODESOPH_FEATURES_H_

#include <array>
#include <string>
#include <vector>

#include "codesoph/cfg.h"
#include "codesoph/matrix.h"
#include "codesoph/python_ast.h"
#include "codesoph/statement_kind.h"

namespace codesoph {

struct InputSet {
  std::vector<std::string> parameters;
  std::vector<std::string> attributes;  // "self.points"
  friend bool operator==(const InputSet&, const InputSet&) = default;
};

// Parameters without the receiver, and first-level receiver attributes in
// first-occurrence order. Attributes only ever used as a call target
// (`self.reset()`) are not inputs.
InputSet ExtractInputs(const python::SyntaxTree& tree);

enum class InputRole { kParameter = 0, kAttribute = 1 };

// Usage kinds: the 8 label classes followed by Other.
inline constexpr int kUsageKinds = kNumLabelClasses + 1;
inline constexpr int kNodeKindOffset = 2 * kUsageKinds;  // 18
inline constexpr int kStmtKindOffset = kNodeKindOffset + 4;  // 22
inline constexpr int kFeatureWidth = kStmtKindOffset + kNumStatementKinds;

int UsageColumn(InputRole role, StatementKind kind);
std::vector<std::string> FeatureColumnNames();

// One row per CFG node. Node statement ids must refer to `tree`.
Matrix AnnotateUsage(const ControlFlowGraph& cfg, const InputSet& inputs,
                     const python::SyntaxTree& tree);

struct Subgraph {
  std::vector<int> nodes;         // CFG ids, ascending
  std::vector<Edge> edges;        // local indices into `nodes`
  Matrix features;                // nodes.size() x kFeatureWidth
};

struct SplitExample {
  Subgraph before;
  Subgraph after;
  int level1 = 0;
  std::array<int, kNumLabelClasses> level2 = {};
};

// Before: nodes from which edge.first is reachable. After: nodes reachable
// from edge.second. The edge itself is in neither half.
SplitExample SplitAtEdge(const ControlFlowGraph& cfg, const Matrix& features,
                         Edge edge);

std::array<int, kNumLabelClasses> LabelVector(KindSet labels);

}  // namespace codesoph

#endif  // CODESOPH_FEATURES_H_
