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

#ifndef CODESOPH_PYTHON_AST_H_
#define CODESOPH_PYTHON_AST_H_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace codesoph::python {

using ExprId = std::int32_t;
using StmtId = std::int32_t;
inline constexpr std::int32_t kNoId = -1;

enum class ExprKind : std::uint8_t {
  kName,
  kAttribute,  // children[0] = value; text = attribute name
  kCall,       // children[0] = callee, rest = arguments
  kSubscript,  // children[0] = value, children[1] = index
  kBinOp,      // text = operator
  kBoolOp,
  kUnaryOp,
  kCompare,
  kLambda,
  kIfExp,
  kConstant,  // text = literal source
  kTuple,
  kList,
  kDict,
  kSet,
  kComprehension,
  kStarred,
  kSlice,
  kKeyword,  // text = keyword name (empty for **kwargs)
  kNamedExpr,
  kYield,
  kAwait,
};

struct Expr {
  ExprKind kind;
  std::string text;
  std::vector<ExprId> children;
  int line = 0;
  int col = 0;
};

enum class StmtType : std::uint8_t {
  kFunctionDef,
  kClassDef,
  kIf,
  kFor,
  kWhile,
  kTry,
  kWith,
  kMatch,
  kReturn,
  kAssign,
  kAnnAssign,
  kAugAssign,
  kRaise,
  kExpr,
  kPass,
  kBreak,
  kContinue,
  kDelete,
  kGlobal,
  kNonlocal,
  kImport,
  kAssert,
  kTypeAlias,
};

struct Stmt {
  StmtType type;
  bool is_async = false;
  int line = 0;      // first line of the statement (decorators included)
  int end_line = 0;  // last line of the statement including nested blocks
  int col = 0;
  // Header expressions owned by the statement itself: If/While test,
  // For target+iter, assignment targets then value, call arguments, etc.
  std::vector<ExprId> exprs;
  std::vector<StmtId> body;
  std::vector<StmtId> orelse;
  // Except handlers, finally, match cases.
  std::vector<std::vector<StmtId>> extra_blocks;
  std::string name;                 // def/class name, augassign operator
  std::vector<std::string> params;  // def parameters in signature order
  bool is_elif = false;
  bool has_finally = false;  // Try: last extra block is `finally`
  int else_line = 0;  // line of the `else`/`elif` keyword, 0 when absent
};

// Arena-backed syntax tree. Immutable once returned by the parser.
class SyntaxTree {
 public:
  const Expr& expr(ExprId id) const { return exprs_[id]; }
  const Stmt& stmt(StmtId id) const { return stmts_[id]; }
  int num_exprs() const { return static_cast<int>(exprs_.size()); }
  int num_stmts() const { return static_cast<int>(stmts_.size()); }

  // Top-level statements of the parsed unit.
  const std::vector<StmtId>& top_level() const { return top_level_; }

  // For method trees: the single FunctionDef. kNoId for module trees.
  StmtId root() const { return root_; }
  const Stmt& method() const { return stmts_[root_]; }

  // Visits `id` and all its descendants in preorder.
  void VisitExpr(ExprId id, const std::function<void(ExprId)>& fn) const;

  // Visits every statement nested in `id` (including `id`) in source order.
  void VisitStmt(StmtId id, const std::function<void(StmtId)>& fn) const;

  // All expressions belonging to `id`. With `deep`, includes expressions of
  // nested blocks.
  std::vector<ExprId> StatementExprs(StmtId id, bool deep) const;

  // Whitespace-normalized source text of an expression, used to key nodes
  // in tree diffs.
  std::string Render(ExprId id) const;

 private:
  friend class Parser;
  friend SyntaxTree ParseMethod(std::string_view source);
  std::vector<Expr> exprs_;
  std::vector<Stmt> stmts_;
  std::vector<StmtId> top_level_;
  StmtId root_ = kNoId;
};

std::string_view Name(StmtType type);

SyntaxTree ParseMethod(std::string_view source);

}  // namespace codesoph::python

#endif  // CODESOPH_PYTHON_AST_H_
