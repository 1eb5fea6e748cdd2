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

#ifndef CODESOPH_CFG_H_
#define CODESOPH_CFG_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "codesoph/python_ast.h"
#include "codesoph/statement_kind.h"

namespace codesoph {

enum class NodeKind { kEntry, kExit, kStatement, kPredicate };
enum class EdgeTag { kFallthrough, kTrueBranch, kFalseBranch };

std::string_view Name(NodeKind kind);
std::string_view Name(EdgeTag tag);
std::optional<NodeKind> NodeKindFromName(std::string_view name);
std::optional<EdgeTag> EdgeTagFromName(std::string_view name);

struct LineSpan {
  int start = 0;
  int end = 0;
  friend bool operator==(const LineSpan&, const LineSpan&) = default;
};

struct CfgNode {
  int id = 0;
  NodeKind kind = NodeKind::kStatement;
  std::optional<StatementKind> stmt_kind;  // empty for Entry/Exit
  KindSet expr_kinds;                      // Call/Subscript/BinOp inside
  LineSpan span;
  python::StmtId stmt = python::kNoId;  // statement in the source tree
};

struct CfgEdge {
  int src = 0;
  int dst = 0;
  EdgeTag tag = EdgeTag::kFallthrough;
  friend bool operator==(const CfgEdge&, const CfgEdge&) = default;
};

using Edge = std::pair<int, int>;

// Statement-granularity control flow graph with virtual Entry and Exit.
// Ids are dense and follow source preorder: Entry first, Exit last.
class ControlFlowGraph {
 public:
  ControlFlowGraph() = default;
  ControlFlowGraph(std::vector<CfgNode> nodes, std::vector<CfgEdge> edges,
                   int entry, int exit);

  const std::vector<CfgNode>& nodes() const { return nodes_; }
  const std::vector<CfgEdge>& edges() const { return edges_; }
  const CfgNode& node(int id) const { return nodes_[id]; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int entry() const { return entry_; }
  int exit() const { return exit_; }

  // Edge indices leaving / entering a node, in edge-list order.
  std::vector<int> OutEdges(int id) const;
  std::vector<int> InEdges(int id) const;
  std::optional<int> FindEdge(int src, int dst) const;
  bool HasEdge(int src, int dst) const { return FindEdge(src, dst).has_value(); }

  // Successor along the tagged out-edge, or -1.
  int Successor(int id, EdgeTag tag) const;

  // Empty when every structural invariant holds, otherwise a description of
  // the first violation found.
  std::string Validate() const;

 private:
  std::vector<CfgNode> nodes_;
  std::vector<CfgEdge> edges_;
  int entry_ = 0;
  int exit_ = 0;
};

// Kind of a statement as seen by the CFG and the labels.
StatementKind ClassifyStatement(const python::SyntaxTree& tree,
                                python::StmtId id);

// Call/Subscript/BinOp constructs syntactically inside the statement's own
// expressions (the condition for predicates, everything for opaque compound
// statements).
KindSet ExprKindsOf(const python::SyntaxTree& tree, python::StmtId id);

// Expressions that belong to the CFG node built for `id`.
std::vector<python::ExprId> NodeExprs(const python::SyntaxTree& tree,
                                      python::StmtId id);

// True for statements the CFG treats as a single opaque node.
bool IsOpaqueCompound(const python::SyntaxTree& tree, python::StmtId id);

// Builds the CFG of tree.method(). Unreachable statements (after a jump in
// the same block) get no node. Throws CfgError for break/continue outside a
// loop.
ControlFlowGraph BuildCfg(const python::SyntaxTree& tree);

struct PathEnumeration {
  std::vector<std::vector<int>> paths;
  bool truncated = false;
};

// Entry-to-Exit paths where each loop is traversed at most once: a back edge
// may re-enter a loop predicate once, after which the predicate leaves the
// loop. Sorted lexicographically.
PathEnumeration EnumeratePaths(const ControlFlowGraph& cfg, int max_paths);

// Kind- and tag-preserving isomorphism. Node kinds, statement kinds,
// expression kinds and edge tags must correspond; spans and statement ids
// are ignored.
bool IsomorphicCfg(const ControlFlowGraph& a, const ControlFlowGraph& b);

// Removes `drop` nodes and renumbers the rest order-preserving. Edges
// touching a dropped node are removed. `remap` (optional) receives
// old-id -> new-id with -1 for dropped nodes.
ControlFlowGraph RemoveNodes(const ControlFlowGraph& cfg,
                             const std::vector<bool>& drop,
                             std::vector<CfgEdge> extra_edges = {},
                             std::vector<int>* remap = nullptr);

}  // namespace codesoph

#endif  // CODESOPH_CFG_H_
