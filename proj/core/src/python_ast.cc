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

#include "codesoph/python_ast.h"

#include <array>

namespace codesoph::python {

void SyntaxTree::VisitExpr(ExprId id,
                           const std::function<void(ExprId)>& fn) const {
  fn(id);
  for (ExprId child : exprs_[id].children) VisitExpr(child, fn);
}

void SyntaxTree::VisitStmt(StmtId id,
                           const std::function<void(StmtId)>& fn) const {
  fn(id);
  const Stmt& s = stmts_[id];
  for (StmtId c : s.body) VisitStmt(c, fn);
  size_t handlers = s.extra_blocks.size() - (s.has_finally ? 1 : 0);
  for (size_t i = 0; i < handlers; ++i) {
    for (StmtId c : s.extra_blocks[i]) VisitStmt(c, fn);
  }
  for (StmtId c : s.orelse) VisitStmt(c, fn);
  if (s.has_finally) {
    for (StmtId c : s.extra_blocks.back()) VisitStmt(c, fn);
  }
}
std::vector<ExprId> SyntaxTree::StatementExprs(StmtId id, bool deep) const {
  if (!deep) return stmts_[id].exprs;
  std::vector<ExprId> out;
  VisitStmt(id, [&](StmtId s) {
    const auto& e = stmts_[s].exprs;
    out.insert(out.end(), e.begin(), e.end());
  });
  return out;
}

std::string SyntaxTree::Render(ExprId id) const {
  const Expr& e = exprs_[id];
  auto join = [&](size_t from, std::string_view sep) {
    std::string out;
    for (size_t i = from; i < e.children.size(); ++i) {
      if (i > from) out += sep;
      out += Render(e.children[i]);
    }
    return out;
  };
  switch (e.kind) {
    case ExprKind::kName:
    case ExprKind::kConstant:
      return e.text;
    case ExprKind::kAttribute:
      return Render(e.children[0]) + "." + e.text;
    case ExprKind::kCall:
      return Render(e.children[0]) + "(" + join(1, ",") + ")";
    case ExprKind::kSubscript:
      return Render(e.children[0]) + "[" + Render(e.children[1]) + "]";
    case ExprKind::kBinOp:
      return "(" + Render(e.children[0]) + e.text + Render(e.children[1]) +
             ")";
    case ExprKind::kBoolOp:
      return "(" + join(0, " " + e.text + " ") + ")";
    case ExprKind::kUnaryOp:
      return e.text + " " + Render(e.children[0]);
    case ExprKind::kCompare:
      return "(" + join(0, " ") + " ?" + e.text + ")";
    case ExprKind::kKeyword:
      return (e.text.empty() ? std::string("**") : e.text + "=") +
             Render(e.children[0]);
    case ExprKind::kStarred:
      return "*" + Render(e.children[0]);
    default:
      return std::string(1, '<') + std::to_string(static_cast<int>(e.kind)) +
             ":" + join(0, ",") + ">";
  }
}

std::string_view Name(StmtType type) {
  static constexpr std::array<std::string_view, 23> kNames = {
      "FunctionDef", "ClassDef", "If",       "For",    "While",
      "Try",         "With",     "Match",    "Return", "Assign",
      "AnnAssign",   "AugAssign", "Raise",   "Expr",   "Pass",
      "Break",       "Continue", "Delete",   "Global", "Nonlocal",
      "Import",      "Assert",   "TypeAlias",
  };
  return kNames[static_cast<size_t>(type)];
}

}  // namespace codesoph::python
