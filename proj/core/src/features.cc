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

#include "codesoph/features.h"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace codesoph {

using python::Expr;
using python::ExprId;
using python::ExprKind;
using python::SyntaxTree;

namespace {

std::string Receiver(const SyntaxTree& tree) {
  const std::vector<std::string>& params = tree.method().params;
  if (!params.empty() && (params[0] == "self" || params[0] == "cls")) {
    return params[0];
  }
  return "";
}

// Name of a first-level receiver attribute (`self.x`), or empty.
std::string AttributeName(const SyntaxTree& tree, ExprId id,
                          const std::string& receiver) {
  const Expr& e = tree.expr(id);
  if (receiver.empty() || e.kind != ExprKind::kAttribute) return "";
  const Expr& value = tree.expr(e.children[0]);
  if (value.kind != ExprKind::kName || value.text != receiver) return "";
  return receiver + "." + e.text;
}

// Visits every node of an expression tree together with the chain of
// enclosing expressions, skipping attributes that are direct call targets.
void WalkWithAncestors(
    const SyntaxTree& tree, ExprId id, std::vector<ExprId>& stack,
    bool is_callee,
    const std::function<void(ExprId, bool, const std::vector<ExprId>&)>& fn) {
  fn(id, is_callee, stack);
  const Expr& e = tree.expr(id);
  stack.push_back(id);
  for (size_t i = 0; i < e.children.size(); ++i) {
    bool callee = e.kind == ExprKind::kCall && i == 0;
    WalkWithAncestors(tree, e.children[i], stack, callee, fn);
  }
  stack.pop_back();
}

std::optional<StatementKind> ConstructKind(ExprKind kind) {
  switch (kind) {
    case ExprKind::kCall:
      return StatementKind::kCall;
    case ExprKind::kSubscript:
      return StatementKind::kSubscript;
    case ExprKind::kBinOp:
      return StatementKind::kBinOp;
    default:
      return std::nullopt;
  }
}

}  // namespace

InputSet ExtractInputs(const SyntaxTree& tree) {
  InputSet inputs;
  const std::string receiver = Receiver(tree);
  const std::vector<std::string>& params = tree.method().params;
  for (size_t i = receiver.empty() ? 0 : 1; i < params.size(); ++i) {
    inputs.parameters.push_back(params[i]);
  }
  std::set<std::string> seen;
  std::vector<ExprId> stack;
  for (python::StmtId top : tree.method().body) {
    tree.VisitStmt(top, [&](python::StmtId id) {
      for (ExprId root : tree.StatementExprs(id, false)) {
        WalkWithAncestors(tree, root, stack, false,
                          [&](ExprId e, bool callee, const std::vector<ExprId>&) {
                            if (callee) return;
                            std::string name = AttributeName(tree, e, receiver);
                            if (!name.empty() && seen.insert(name).second) {
                              inputs.attributes.push_back(name);
                            }
                          });
      }
    });
  }
  return inputs;
}

int UsageColumn(InputRole role, StatementKind kind) {
  int k = IsLabelClass(kind) ? Index(kind) : kNumLabelClasses;
  return static_cast<int>(role) * kUsageKinds + k;
}

std::vector<std::string> FeatureColumnNames() {
  std::vector<std::string> names;
  for (const char* role : {"param", "attr"}) {
    for (StatementKind k : kLabelClasses) {
      names.push_back(std::string(role) + "." + std::string(Name(k)));
    }
    names.push_back(std::string(role) + ".Other");
  }
  for (NodeKind k : {NodeKind::kEntry, NodeKind::kExit, NodeKind::kStatement,
                     NodeKind::kPredicate}) {
    names.push_back("node." + std::string(Name(k)));
  }
  for (int i = 0; i < kNumStatementKinds; ++i) {
    names.push_back("stmt." +
                    std::string(Name(static_cast<StatementKind>(i))));
  }
  return names;
}

Matrix AnnotateUsage(const ControlFlowGraph& cfg, const InputSet& inputs,
                     const SyntaxTree& tree) {
  Matrix features(cfg.num_nodes(), kFeatureWidth);
  const std::string receiver = Receiver(tree);
  std::map<std::string, InputRole> role_of;
  for (const std::string& p : inputs.parameters) {
    role_of.emplace(p, InputRole::kParameter);
  }
  for (const std::string& a : inputs.attributes) {
    role_of.emplace(a, InputRole::kAttribute);
  }
  std::vector<ExprId> stack;
  for (const CfgNode& node : cfg.nodes()) {
    double* row = features.row(node.id);
    row[kNodeKindOffset + static_cast<int>(node.kind)] = 1.0;
    if (!node.stmt_kind) continue;
    row[kStmtKindOffset + Index(*node.stmt_kind)] = 1.0;
    if (node.stmt == python::kNoId) continue;

    std::set<std::string> used;
    std::set<std::pair<ExprId, std::string>> constructs;
    for (ExprId root : NodeExprs(tree, node.stmt)) {
      WalkWithAncestors(
          tree, root, stack, false,
          [&](ExprId e, bool callee, const std::vector<ExprId>& ancestors) {
            const Expr& ex = tree.expr(e);
            std::string name;
            if (ex.kind == ExprKind::kName) {
              name = ex.text;
              auto it = role_of.find(name);
              if (it == role_of.end() || it->second != InputRole::kParameter) {
                return;
              }
            } else {
              if (callee) return;
              name = AttributeName(tree, e, receiver);
              if (name.empty() || !role_of.count(name)) return;
            }
            used.insert(name);
            for (ExprId a : ancestors) {
              if (ConstructKind(tree.expr(a).kind)) constructs.insert({a, name});
            }
          });
    }
    for (const std::string& name : used) {
      row[UsageColumn(role_of[name], *node.stmt_kind)] += 1.0;
    }
    for (const auto& [construct, name] : constructs) {
      row[UsageColumn(role_of[name], *ConstructKind(tree.expr(construct).kind))] +=
          1.0;
    }
  }
  return features;
}

namespace {

std::vector<bool> Reach(const ControlFlowGraph& cfg, int start, bool forward) {
  std::vector<bool> seen(cfg.num_nodes(), false);
  std::vector<int> work = {start};
  seen[start] = true;
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    for (int e : forward ? cfg.OutEdges(v) : cfg.InEdges(v)) {
      int w = forward ? cfg.edges()[e].dst : cfg.edges()[e].src;
      if (!seen[w]) {
        seen[w] = true;
        work.push_back(w);
      }
    }
  }
  return seen;
}

Subgraph Induce(const ControlFlowGraph& cfg, const Matrix& features,
                const std::vector<bool>& members, Edge excluded) {
  Subgraph g;
  std::vector<int> local(cfg.num_nodes(), -1);
  for (int v = 0; v < cfg.num_nodes(); ++v) {
    if (members[v]) {
      local[v] = static_cast<int>(g.nodes.size());
      g.nodes.push_back(v);
    }
  }
  for (const CfgEdge& e : cfg.edges()) {
    if (local[e.src] == -1 || local[e.dst] == -1) continue;
    if (Edge{e.src, e.dst} == excluded) continue;
    g.edges.push_back({local[e.src], local[e.dst]});
  }
  g.features = Matrix(static_cast<int>(g.nodes.size()), kFeatureWidth);
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    std::copy(features.row(g.nodes[i]), features.row(g.nodes[i]) + kFeatureWidth,
              g.features.row(static_cast<int>(i)));
  }
  return g;
}

}  // namespace

SplitExample SplitAtEdge(const ControlFlowGraph& cfg, const Matrix& features,
                         Edge edge) {
  assert(cfg.HasEdge(edge.first, edge.second));
  assert(features.rows() == cfg.num_nodes());
  SplitExample split;
  split.before = Induce(cfg, features, Reach(cfg, edge.first, false), edge);
  split.after = Induce(cfg, features, Reach(cfg, edge.second, true), edge);
  assert(!split.before.nodes.empty() && !split.after.nodes.empty());
  return split;
}

std::array<int, kNumLabelClasses> LabelVector(KindSet labels) {
  std::array<int, kNumLabelClasses> v = {};
  for (int i = 0; i < kNumLabelClasses; ++i) {
    v[i] = labels.Contains(kLabelClasses[i]) ? 1 : 0;
  }
  return v;
}

}  // namespace codesoph
