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

#include "codesoph/python_parser.h"

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "codesoph/errors.h"
#include "codesoph/python_lexer.h"

namespace codesoph::python {

namespace {

constexpr std::array<std::string_view, 35> kKeywords = {
    "False",  "None",   "True",    "and",      "as",     "assert", "async",
    "await",  "break",  "class",   "continue", "def",    "del",    "elif",
    "else",   "except", "finally", "for",      "from",   "global", "if",
    "import", "in",     "is",      "lambda",   "nonlocal", "not",  "or",
    "pass",   "raise",  "return",  "try",      "while",  "with",   "yield",
};

bool IsKeyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

constexpr std::array<std::string_view, 13> kAugOps = {
    "+=", "-=", "*=", "/=", "//=", "%=", "@=", "&=", "|=", "^=", ">>=", "<<=",
    "**=",
};

}  // namespace

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  SyntaxTree Module() {
    while (!At(TokenType::kEnd)) {
      if (At(TokenType::kNewline)) {
        Next();
        continue;
      }
      Statement(tree_.top_level_);
    }
    return std::move(tree_);
  }

 private:
  // ---- token helpers -------------------------------------------------------

  const Token& Peek(int ahead = 0) const {
    size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  bool At(TokenType type, int ahead = 0) const {
    return Peek(ahead).type == type;
  }
  bool AtOp(std::string_view op, int ahead = 0) const {
    const Token& t = Peek(ahead);
    return t.type == TokenType::kOp && t.text == op;
  }
  bool AtKw(std::string_view kw, int ahead = 0) const {
    const Token& t = Peek(ahead);
    return t.type == TokenType::kName && t.text == kw;
  }
  const Token& Next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    if (t.type != TokenType::kNewline && t.type != TokenType::kIndent &&
        t.type != TokenType::kDedent && t.type != TokenType::kEnd) {
      last_line_ = t.end_line;
    }
    return t;
  }
  [[noreturn]] void Fail(const std::string& message) const {
    const Token& t = Peek();
    std::string near = t.type == TokenType::kNewline ? "newline"
                       : t.type == TokenType::kIndent ? "indent"
                       : t.type == TokenType::kDedent ? "dedent"
                       : t.type == TokenType::kEnd    ? "end of input"
                                                      : "'" + t.text + "'";
    throw ParseError(message + " near " + near, t.line, t.col);
  }
  void ExpectOp(std::string_view op) {
    if (!AtOp(op)) Fail("expected '" + std::string(op) + "'");
    Next();
  }
  void ExpectKw(std::string_view kw) {
    if (!AtKw(kw)) Fail("expected '" + std::string(kw) + "'");
    Next();
  }
  void Expect(TokenType type, const char* what) {
    if (!At(type)) Fail(std::string("expected ") + what);
    Next();
  }
  std::string ExpectName() {
    if (!At(TokenType::kName) || IsKeyword(Peek().text)) Fail("expected name");
    return Next().text;
  }

  // True when the current token can begin an expression.
  bool StartsExpr(int ahead = 0) const {
    const Token& t = Peek(ahead);
    switch (t.type) {
      case TokenType::kNumber:
      case TokenType::kString:
        return true;
      case TokenType::kName:
        return !IsKeyword(t.text) || t.text == "None" || t.text == "True" ||
               t.text == "False" || t.text == "lambda" || t.text == "not" ||
               t.text == "await" || t.text == "yield";
      case TokenType::kOp:
        return t.text == "(" || t.text == "[" || t.text == "{" ||
               t.text == "-" || t.text == "+" || t.text == "~" ||
               t.text == "*" || t.text == "..." || t.text == "**";
      default:
        return false;
    }
  }

  // ---- node construction ---------------------------------------------------

  ExprId NewExpr(ExprKind kind, std::string text, std::vector<ExprId> children,
                 const Token& at) {
    tree_.exprs_.push_back(
        Expr{kind, std::move(text), std::move(children), at.line, at.col});
    return static_cast<ExprId>(tree_.exprs_.size() - 1);
  }
  StmtId NewStmt(StmtType type, const Token& at) {
    Stmt s;
    s.type = type;
    s.line = at.line;
    s.col = at.col;
    tree_.stmts_.push_back(std::move(s));
    return static_cast<StmtId>(tree_.stmts_.size() - 1);
  }
  Stmt& S(StmtId id) { return tree_.stmts_[id]; }

  // ---- statements ----------------------------------------------------------

  void Statement(std::vector<StmtId>& out) {
    const Token& t = Peek();
    if (t.type == TokenType::kIndent) Fail("unexpected indent");
    if (t.type == TokenType::kOp && t.text == "@") {
      out.push_back(Decorated());
      return;
    }
    if (t.type == TokenType::kName) {
      const std::string& w = t.text;
      if (w == "if") return out.push_back(If(false));
      if (w == "while") return out.push_back(While());
      if (w == "for") return out.push_back(For());
      if (w == "try") return out.push_back(Try());
      if (w == "with") return out.push_back(With());
      if (w == "def") return out.push_back(FunctionDef());
      if (w == "class") return out.push_back(ClassDef());
      if (w == "async") return out.push_back(Async());
      if (w == "match" && IsSoftCompound()) return out.push_back(Match());
    }
    SimpleStatements(out);
  }

  // Checks whether the logical line starting here is a compound header,
  // i.e. ends with ':' and is followed by an indented block.
  bool IsSoftCompound() const {
    if (AtOp("=", 1) || AtOp(".", 1) || AtOp(",", 1) || AtOp(":", 1)) {
      return false;
    }
    size_t i = pos_;
    while (i < toks_.size() && toks_[i].type != TokenType::kNewline &&
           toks_[i].type != TokenType::kEnd) {
      ++i;
    }
    if (i == pos_ || i + 1 >= toks_.size()) return false;
    const Token& last = toks_[i - 1];
    return last.type == TokenType::kOp && last.text == ":" &&
           toks_[i + 1].type == TokenType::kIndent;
  }

  std::vector<StmtId> Suite() {
    ExpectOp(":");
    std::vector<StmtId> body;
    if (At(TokenType::kNewline)) {
      Next();
      Expect(TokenType::kIndent, "indented block");
      while (!At(TokenType::kDedent) && !At(TokenType::kEnd)) {
        if (At(TokenType::kNewline)) {
          Next();
          continue;
        }
        Statement(body);
      }
      if (At(TokenType::kDedent)) Next();
    } else {
      SimpleStatements(body);
    }
    if (body.empty()) Fail("expected an indented block");
    return body;
  }

  void Finish(StmtId id) { S(id).end_line = last_line_; }

  StmtId Decorated() {
    const Token& first = Peek();
    std::vector<ExprId> decorators;
    while (AtOp("@")) {
      Next();
      decorators.push_back(NamedExprTest());
      Expect(TokenType::kNewline, "newline after decorator");
    }
    StmtId id;
    if (AtKw("def")) {
      id = FunctionDef();
    } else if (AtKw("class")) {
      id = ClassDef();
    } else if (AtKw("async") && AtKw("def", 1)) {
      id = Async();
    } else {
      Fail("expected definition after decorator");
    }
    Stmt& s = S(id);
    s.line = first.line;
    s.col = first.col;
    s.exprs.insert(s.exprs.begin(), decorators.begin(), decorators.end());
    return id;
  }

  StmtId Async() {
    const Token& at = Next();  // async
    StmtId id;
    if (AtKw("def")) {
      id = FunctionDef();
    } else if (AtKw("for")) {
      id = For();
    } else if (AtKw("with")) {
      id = With();
    } else {
      Fail("expected def, for or with after async");
    }
    S(id).is_async = true;
    S(id).line = at.line;
    S(id).col = at.col;
    return id;
  }

  void SkipBracketed(std::string_view open, std::string_view close) {
    int depth = 0;
    do {
      if (AtOp(open)) ++depth;
      if (AtOp(close)) --depth;
      if (At(TokenType::kEnd)) Fail("unbalanced brackets");
      Next();
    } while (depth > 0);
  }

  StmtId FunctionDef() {
    StmtId id = NewStmt(StmtType::kFunctionDef, Peek());
    ExpectKw("def");
    std::string name = ExpectName();
    if (AtOp("[")) SkipBracketed("[", "]");
    ExpectOp("(");
    std::vector<std::string> params;
    std::vector<ExprId> exprs;
    while (!AtOp(")")) {
      if (AtOp("/")) {
        Next();
      } else if (AtOp("*") || AtOp("**")) {
        Next();
        if (At(TokenType::kName)) {
          params.push_back(ExpectName());
          if (AtOp(":")) {
            Next();
            exprs.push_back(AtOp("*") ? StarExpr() : Test());
          }
        }
      } else {
        params.push_back(ExpectName());
        if (AtOp(":")) {
          Next();
          exprs.push_back(Test());
        }
        if (AtOp("=")) {
          Next();
          exprs.push_back(Test());
        }
      }
      if (!AtOp(",")) break;
      Next();
    }
    ExpectOp(")");
    if (AtOp("->")) {
      Next();
      exprs.push_back(Test());
    }
    std::vector<StmtId> body = Suite();
    Stmt& s = S(id);
    s.name = std::move(name);
    s.params = std::move(params);
    s.exprs = std::move(exprs);
    s.body = std::move(body);
    Finish(id);
    return id;
  }

  StmtId ClassDef() {
    StmtId id = NewStmt(StmtType::kClassDef, Peek());
    ExpectKw("class");
    std::string name = ExpectName();
    if (AtOp("[")) SkipBracketed("[", "]");
    std::vector<ExprId> bases;
    if (AtOp("(")) {
      Next();
      bases = ArgList(")");
      ExpectOp(")");
    }
    std::vector<StmtId> body = Suite();
    Stmt& s = S(id);
    s.name = std::move(name);
    s.exprs = std::move(bases);
    s.body = std::move(body);
    Finish(id);
    return id;
  }

  StmtId If(bool is_elif) {
    StmtId id = NewStmt(StmtType::kIf, Peek());
    Next();  // if / elif
    ExprId test = NamedExprTest();
    std::vector<StmtId> body = Suite();
    std::vector<StmtId> orelse;
    int else_line = 0;
    if (AtKw("elif")) {
      else_line = Peek().line;
      orelse.push_back(If(true));
    } else if (AtKw("else")) {
      else_line = Peek().line;
      Next();
      orelse = Suite();
    }
    Stmt& s = S(id);
    s.is_elif = is_elif;
    s.exprs = {test};
    s.body = std::move(body);
    s.orelse = std::move(orelse);
    s.else_line = else_line;
    Finish(id);
    return id;
  }

  void LoopElse(StmtId id) {
    if (AtKw("else")) {
      int line = Peek().line;
      Next();
      auto orelse = Suite();
      S(id).orelse = std::move(orelse);
      S(id).else_line = line;
    }
  }

  StmtId While() {
    StmtId id = NewStmt(StmtType::kWhile, Peek());
    Next();
    ExprId test = NamedExprTest();
    auto body = Suite();
    S(id).exprs = {test};
    S(id).body = std::move(body);
    LoopElse(id);
    Finish(id);
    return id;
  }

  StmtId For() {
    StmtId id = NewStmt(StmtType::kFor, Peek());
    Next();
    ExprId target = ExprList();
    ExpectKw("in");
    ExprId iter = TestListStarExpr();
    auto body = Suite();
    S(id).exprs = {target, iter};
    S(id).body = std::move(body);
    LoopElse(id);
    Finish(id);
    return id;
  }

  StmtId Try() {
    StmtId id = NewStmt(StmtType::kTry, Peek());
    Next();
    auto body = Suite();
    std::vector<ExprId> exprs;
    std::vector<std::vector<StmtId>> blocks;
    while (AtKw("except")) {
      Next();
      if (AtOp("*")) Next();
      if (!AtOp(":")) {
        exprs.push_back(Test());
        if (AtKw("as")) {
          Next();
          ExpectName();
        } else if (AtOp(",")) {
          // Several exception types without parentheses (3.14 syntax).
          while (AtOp(",")) {
            Next();
            exprs.push_back(Test());
          }
        }
      }
      blocks.push_back(Suite());
    }
    if (AtKw("else")) {
      S(id).else_line = Peek().line;
      Next();
      auto orelse = Suite();
      S(id).orelse = std::move(orelse);
    }
    if (AtKw("finally")) {
      Next();
      blocks.push_back(Suite());
      S(id).has_finally = true;
    }
    if (blocks.empty()) Fail("try without except or finally");
    S(id).body = std::move(body);
    S(id).exprs = std::move(exprs);
    S(id).extra_blocks = std::move(blocks);
    Finish(id);
    return id;
  }

  void WithItem(std::vector<ExprId>& exprs) {
    exprs.push_back(Test());
    if (AtKw("as")) {
      Next();
      exprs.push_back(StarTarget());
    }
  }

  StmtId With() {
    StmtId id = NewStmt(StmtType::kWith, Peek());
    Next();
    std::vector<ExprId> exprs;
    bool parsed = false;
    if (AtOp("(")) {
      // Parenthesized with-items; fall back to an ordinary expression.
      size_t save_pos = pos_;
      size_t save_exprs = tree_.exprs_.size();
      int save_line = last_line_;
      try {
        Next();
        std::vector<ExprId> items;
        while (!AtOp(")")) {
          WithItem(items);
          if (!AtOp(",")) break;
          Next();
        }
        ExpectOp(")");
        if (!AtOp(":")) Fail("expected ':'");
        exprs = std::move(items);
        parsed = true;
      } catch (const ParseError&) {
        pos_ = save_pos;
        tree_.exprs_.resize(save_exprs);
        last_line_ = save_line;
      }
    }
    if (!parsed) {
      WithItem(exprs);
      while (AtOp(",")) {
        Next();
        WithItem(exprs);
      }
    }
    auto body = Suite();
    S(id).exprs = std::move(exprs);
    S(id).body = std::move(body);
    Finish(id);
    return id;
  }

  // Skips tokens up to and including the first ':' at bracket depth zero.
  void SkipHeaderToColon() {
    int depth = 0;
    while (true) {
      if (At(TokenType::kNewline) || At(TokenType::kEnd)) {
        Fail("expected ':'");
      }
      if (AtOp("(") || AtOp("[") || AtOp("{")) ++depth;
      if (AtOp(")") || AtOp("]") || AtOp("}")) --depth;
      if (depth == 0 && AtOp(":")) return;
      Next();
    }
  }

  // Match statements are kept opaque: subject and patterns are skipped,
  // case bodies are parsed.
  StmtId Match() {
    StmtId id = NewStmt(StmtType::kMatch, Peek());
    Next();
    SkipHeaderToColon();
    Next();
    Expect(TokenType::kNewline, "newline");
    Expect(TokenType::kIndent, "indented block");
    std::vector<std::vector<StmtId>> cases;
    while (!At(TokenType::kDedent) && !At(TokenType::kEnd)) {
      if (At(TokenType::kNewline)) {
        Next();
        continue;
      }
      if (!AtKw("case")) Fail("expected 'case'");
      Next();
      SkipHeaderToColon();
      cases.push_back(Suite());
    }
    if (At(TokenType::kDedent)) Next();
    if (cases.empty()) Fail("match without cases");
    S(id).extra_blocks = std::move(cases);
    Finish(id);
    return id;
  }

  void SimpleStatements(std::vector<StmtId>& out) {
    out.push_back(SimpleStatement());
    while (AtOp(";")) {
      Next();
      if (At(TokenType::kNewline) || At(TokenType::kEnd)) break;
      out.push_back(SimpleStatement());
    }
    if (At(TokenType::kEnd)) return;
    Expect(TokenType::kNewline, "end of statement");
  }

  StmtId SimpleStatement() {
    const Token& t = Peek();
    if (t.type == TokenType::kName) {
      const std::string& w = t.text;
      if (w == "pass") return Bare(StmtType::kPass);
      if (w == "break") return Bare(StmtType::kBreak);
      if (w == "continue") return Bare(StmtType::kContinue);
      if (w == "return") {
        StmtId id = NewStmt(StmtType::kReturn, Next());
        if (StartsExpr()) S(id).exprs.push_back(TestListStarExpr());
        Finish(id);
        return id;
      }
      if (w == "raise") {
        StmtId id = NewStmt(StmtType::kRaise, Next());
        if (StartsExpr()) {
          ExprId exc = Test();
          S(id).exprs.push_back(exc);
          if (AtKw("from")) {
            Next();
            ExprId cause = Test();
            S(id).exprs.push_back(cause);
          }
        }
        Finish(id);
        return id;
      }
      if (w == "global" || w == "nonlocal") {
        StmtId id = NewStmt(
            w == "global" ? StmtType::kGlobal : StmtType::kNonlocal, Next());
        ExpectName();
        while (AtOp(",")) {
          Next();
          ExpectName();
        }
        Finish(id);
        return id;
      }
      if (w == "del") {
        StmtId id = NewStmt(StmtType::kDelete, Next());
        ExprId targets = ExprList();
        S(id).exprs.push_back(targets);
        Finish(id);
        return id;
      }
      if (w == "assert") {
        StmtId id = NewStmt(StmtType::kAssert, Next());
        ExprId test = Test();
        S(id).exprs.push_back(test);
        if (AtOp(",")) {
          Next();
          ExprId msg = Test();
          S(id).exprs.push_back(msg);
        }
        Finish(id);
        return id;
      }
      if (w == "import" || w == "from") {
        StmtId id = NewStmt(StmtType::kImport, Next());
        while (!At(TokenType::kNewline) && !At(TokenType::kEnd) &&
               !AtOp(";")) {
          Next();
        }
        Finish(id);
        return id;
      }
      if (w == "type" && At(TokenType::kName, 1) &&
          (AtOp("=", 2) || AtOp("[", 2))) {
        StmtId id = NewStmt(StmtType::kTypeAlias, Next());
        while (!At(TokenType::kNewline) && !At(TokenType::kEnd) &&
               !AtOp(";")) {
          Next();
        }
        Finish(id);
        return id;
      }
    }
    return ExpressionStatement();
  }

  StmtId Bare(StmtType type) {
    StmtId id = NewStmt(type, Next());
    Finish(id);
    return id;
  }

  bool AtAugOp() const {
    if (!At(TokenType::kOp)) return false;
    return std::find(kAugOps.begin(), kAugOps.end(), Peek().text) !=
           kAugOps.end();
  }

  StmtId ExpressionStatement() {
    const Token& at = Peek();
    if (!StartsExpr()) Fail("invalid syntax");
    ExprId first = AtKw("yield") ? YieldExpr() : TestListStarExpr();
    if (AtOp(":")) {
      StmtId id = NewStmt(StmtType::kAnnAssign, at);
      Next();
      ExprId annotation = Test();
      S(id).exprs = {first, annotation};
      if (AtOp("=")) {
        Next();
        ExprId value = AtKw("yield") ? YieldExpr() : TestListStarExpr();
        S(id).exprs.push_back(value);
      }
      Finish(id);
      return id;
    }
    if (AtAugOp()) {
      StmtId id = NewStmt(StmtType::kAugAssign, at);
      std::string op = Next().text;
      ExprId value = AtKw("yield") ? YieldExpr() : TestListStarExpr();
      S(id).name = std::move(op);
      S(id).exprs = {first, value};
      Finish(id);
      return id;
    }
    if (AtOp("=")) {
      StmtId id = NewStmt(StmtType::kAssign, at);
      std::vector<ExprId> parts = {first};
      while (AtOp("=")) {
        Next();
        parts.push_back(AtKw("yield") ? YieldExpr() : TestListStarExpr());
      }
      S(id).exprs = std::move(parts);
      Finish(id);
      return id;
    }
    StmtId id = NewStmt(StmtType::kExpr, at);
    S(id).exprs = {first};
    Finish(id);
    return id;
  }

  // ---- expressions ---------------------------------------------------------

  ExprId YieldExpr() {
    const Token& at = Next();  // yield
    std::vector<ExprId> children;
    std::string text;
    if (AtKw("from")) {
      Next();
      text = "from";
      children.push_back(Test());
    } else if (StartsExpr() && !AtKw("yield")) {
      children.push_back(TestListStarExpr());
    }
    return NewExpr(ExprKind::kYield, std::move(text), std::move(children), at);
  }

  ExprId StarExpr() {
    const Token& at = Next();  // *
    ExprId value = BitOr();
    return NewExpr(ExprKind::kStarred, "", {value}, at);
  }

  // Targets of `for` and `del` and comprehension variables.
  ExprId StarTarget() { return AtOp("*") ? StarExpr() : BitOr(); }

  ExprId ExprList() {
    const Token& at = Peek();
    ExprId first = StarTarget();
    if (!AtOp(",")) return first;
    std::vector<ExprId> items = {first};
    while (AtOp(",")) {
      Next();
      if (!StartsExpr() || AtKw("in")) break;
      items.push_back(StarTarget());
    }
    return NewExpr(ExprKind::kTuple, "", std::move(items), at);
  }

  ExprId TestListStarExpr() {
    const Token& at = Peek();
    ExprId first = AtOp("*") ? StarExpr() : NamedExprTest();
    if (!AtOp(",")) return first;
    std::vector<ExprId> items = {first};
    while (AtOp(",")) {
      Next();
      if (!StartsExpr() || AtKw("yield")) break;
      items.push_back(AtOp("*") ? StarExpr() : NamedExprTest());
    }
    return NewExpr(ExprKind::kTuple, "", std::move(items), at);
  }

  ExprId NamedExprTest() {
    if (At(TokenType::kName) && AtOp(":=", 1)) {
      const Token& at = Peek();
      ExprId target = Atom();
      Next();  // :=
      ExprId value = Test();
      return NewExpr(ExprKind::kNamedExpr, "", {target, value}, at);
    }
    return Test();
  }

  ExprId Test() {
    if (AtKw("lambda")) return Lambda(/*nocond=*/false);
    const Token& at = Peek();
    ExprId body = OrTest();
    if (AtKw("if")) {
      Next();
      ExprId cond = OrTest();
      ExpectKw("else");
      ExprId orelse = Test();
      return NewExpr(ExprKind::kIfExp, "", {body, cond, orelse}, at);
    }
    return body;
  }

  ExprId TestNoCond() {
    if (AtKw("lambda")) return Lambda(/*nocond=*/true);
    return OrTest();
  }

  ExprId Lambda(bool nocond) {
    const Token& at = Next();  // lambda
    std::vector<ExprId> children;
    while (!AtOp(":")) {
      if (AtOp("*") || AtOp("**")) {
        Next();
        if (At(TokenType::kName)) ExpectName();
      } else if (AtOp("/")) {
        Next();
      } else {
        ExpectName();
        if (AtOp("=")) {
          Next();
          children.push_back(Test());
        }
      }
      if (!AtOp(",")) break;
      Next();
    }
    ExpectOp(":");
    children.push_back(nocond ? TestNoCond() : Test());
    return NewExpr(ExprKind::kLambda, "", std::move(children), at);
  }

  ExprId OrTest() {
    const Token& at = Peek();
    ExprId left = AndTest();
    if (!AtKw("or")) return left;
    std::vector<ExprId> items = {left};
    while (AtKw("or")) {
      Next();
      items.push_back(AndTest());
    }
    return NewExpr(ExprKind::kBoolOp, "or", std::move(items), at);
  }

  ExprId AndTest() {
    const Token& at = Peek();
    ExprId left = NotTest();
    if (!AtKw("and")) return left;
    std::vector<ExprId> items = {left};
    while (AtKw("and")) {
      Next();
      items.push_back(NotTest());
    }
    return NewExpr(ExprKind::kBoolOp, "and", std::move(items), at);
  }

  ExprId NotTest() {
    if (AtKw("not")) {
      const Token& at = Next();
      ExprId operand = NotTest();
      return NewExpr(ExprKind::kUnaryOp, "not", {operand}, at);
    }
    return Comparison();
  }

  // Returns the comparison operator at the cursor (consuming it) or "".
  std::string CompOp() {
    static constexpr std::array<std::string_view, 6> kOps = {
        "<", ">", "==", ">=", "<=", "!="};
    if (At(TokenType::kOp) &&
        std::find(kOps.begin(), kOps.end(), Peek().text) != kOps.end()) {
      return Next().text;
    }
    if (AtKw("in")) {
      Next();
      return "in";
    }
    if (AtKw("not") && AtKw("in", 1)) {
      Next();
      Next();
      return "not in";
    }
    if (AtKw("is")) {
      Next();
      if (AtKw("not")) {
        Next();
        return "is not";
      }
      return "is";
    }
    return "";
  }

  ExprId Comparison() {
    const Token& at = Peek();
    ExprId left = BitOr();
    std::string op = CompOp();
    if (op.empty()) return left;
    std::vector<ExprId> items = {left};
    std::string ops;
    while (!op.empty()) {
      if (!ops.empty()) ops += ' ';
      ops += op;
      items.push_back(BitOr());
      op = CompOp();
    }
    return NewExpr(ExprKind::kCompare, std::move(ops), std::move(items), at);
  }

  template <typename Sub>
  ExprId BinaryLevel(std::initializer_list<std::string_view> ops, Sub sub) {
    const Token& at = Peek();
    ExprId left = (this->*sub)();
    while (At(TokenType::kOp) &&
           std::find(ops.begin(), ops.end(), Peek().text) != ops.end()) {
      std::string op = Next().text;
      ExprId right = (this->*sub)();
      left = NewExpr(ExprKind::kBinOp, std::move(op), {left, right}, at);
    }
    return left;
  }

  ExprId BitOr() { return BinaryLevel({"|"}, &Parser::BitXor); }
  ExprId BitXor() { return BinaryLevel({"^"}, &Parser::BitAnd); }
  ExprId BitAnd() { return BinaryLevel({"&"}, &Parser::Shift); }
  ExprId Shift() { return BinaryLevel({"<<", ">>"}, &Parser::Arith); }
  ExprId Arith() { return BinaryLevel({"+", "-"}, &Parser::Term); }
  ExprId Term() {
    return BinaryLevel({"*", "/", "//", "%", "@"}, &Parser::Factor);
  }

  ExprId Factor() {
    if (AtOp("+") || AtOp("-") || AtOp("~")) {
      const Token& at = Next();
      ExprId operand = Factor();
      return NewExpr(ExprKind::kUnaryOp, at.text, {operand}, at);
    }
    return Power();
  }

  ExprId Power() {
    const Token& at = Peek();
    ExprId base = AwaitPrimary();
    if (AtOp("**")) {
      Next();
      ExprId exponent = Factor();
      return NewExpr(ExprKind::kBinOp, "**", {base, exponent}, at);
    }
    return base;
  }

  ExprId AwaitPrimary() {
    if (AtKw("await")) {
      const Token& at = Next();
      ExprId value = AwaitPrimary();
      return NewExpr(ExprKind::kAwait, "", {value}, at);
    }
    ExprId e = Atom();
    while (true) {
      const Token& at = Peek();
      if (AtOp("(")) {
        Next();
        std::vector<ExprId> children = {e};
        std::vector<ExprId> args = ArgList(")");
        children.insert(children.end(), args.begin(), args.end());
        ExpectOp(")");
        e = NewExpr(ExprKind::kCall, "", std::move(children), at);
      } else if (AtOp("[")) {
        Next();
        ExprId index = SubscriptList();
        ExpectOp("]");
        e = NewExpr(ExprKind::kSubscript, "", {e, index}, at);
      } else if (AtOp(".")) {
        Next();
        std::string attr = Next().text;
        if (attr.empty()) Fail("expected attribute name");
        e = NewExpr(ExprKind::kAttribute, std::move(attr), {e}, at);
      } else {
        return e;
      }
    }
  }

  std::vector<ExprId> ArgList(std::string_view close) {
    std::vector<ExprId> args;
    while (!AtOp(close)) {
      const Token& at = Peek();
      if (AtOp("*")) {
        Next();
        ExprId v = Test();
        args.push_back(NewExpr(ExprKind::kStarred, "", {v}, at));
      } else if (AtOp("**")) {
        Next();
        ExprId v = Test();
        args.push_back(NewExpr(ExprKind::kKeyword, "", {v}, at));
      } else if (At(TokenType::kName) && AtOp("=", 1)) {
        std::string name = Next().text;
        Next();
        ExprId v = Test();
        args.push_back(NewExpr(ExprKind::kKeyword, std::move(name), {v}, at));
      } else {
        ExprId v = NamedExprTest();
        if (AtKw("for") || (AtKw("async") && AtKw("for", 1))) {
          v = Comprehension(at, {v});
        }
        args.push_back(v);
      }
      if (!AtOp(",")) break;
      Next();
    }
    return args;
  }

  ExprId Subscript() {
    const Token& at = Peek();
    if (AtOp("*")) return StarExpr();
    std::vector<ExprId> parts;
    if (!AtOp(":")) {
      ExprId lower = NamedExprTest();
      if (!AtOp(":")) return lower;
      parts.push_back(lower);
    }
    Next();  // :
    if (!AtOp(":") && !AtOp("]") && !AtOp(",")) parts.push_back(Test());
    if (AtOp(":")) {
      Next();
      if (!AtOp("]") && !AtOp(",")) parts.push_back(Test());
    }
    return NewExpr(ExprKind::kSlice, "", std::move(parts), at);
  }

  ExprId SubscriptList() {
    const Token& at = Peek();
    ExprId first = Subscript();
    if (!AtOp(",")) return first;
    std::vector<ExprId> items = {first};
    while (AtOp(",")) {
      Next();
      if (AtOp("]")) break;
      items.push_back(Subscript());
    }
    return NewExpr(ExprKind::kTuple, "", std::move(items), at);
  }

  // Parses `for ... in ... [if ...]*` clauses following `elements`.
  ExprId Comprehension(const Token& at, std::vector<ExprId> elements) {
    std::vector<ExprId> children = std::move(elements);
    while (AtKw("for") || (AtKw("async") && AtKw("for", 1))) {
      if (AtKw("async")) Next();
      Next();  // for
      children.push_back(ExprList());
      ExpectKw("in");
      children.push_back(OrTest());
      while (AtKw("if")) {
        Next();
        children.push_back(TestNoCond());
      }
    }
    return NewExpr(ExprKind::kComprehension, "", std::move(children), at);
  }

  bool AtCompFor() const {
    return AtKw("for") || (AtKw("async") && AtKw("for", 1));
  }

  ExprId ListLike(const Token& at, std::string_view close, ExprKind kind) {
    std::vector<ExprId> items;
    if (AtOp(close)) {
      Next();
      return NewExpr(kind, "", {}, at);
    }
    ExprId first = AtOp("*") ? StarExpr() : NamedExprTest();
    if (AtCompFor()) {
      ExprId comp = Comprehension(at, {first});
      ExpectOp(close);
      return comp;
    }
    items.push_back(first);
    bool had_comma = false;
    while (AtOp(",")) {
      had_comma = true;
      Next();
      if (AtOp(close)) break;
      items.push_back(AtOp("*") ? StarExpr() : NamedExprTest());
    }
    ExpectOp(close);
    if (kind == ExprKind::kTuple && !had_comma) return first;
    return NewExpr(kind, "", std::move(items), at);
  }

  ExprId Braces(const Token& at) {
    if (AtOp("}")) {
      Next();
      return NewExpr(ExprKind::kDict, "", {}, at);
    }
    std::vector<ExprId> items;
    bool is_dict = false;
    auto dict_item = [&]() {
      if (AtOp("**")) {
        const Token& st = Next();
        ExprId v = BitOr();
        items.push_back(NewExpr(ExprKind::kKeyword, "", {v}, st));
        return;
      }
      items.push_back(Test());
      ExpectOp(":");
      items.push_back(Test());
    };
    if (AtOp("**")) {
      is_dict = true;
      dict_item();
    } else {
      ExprId first = AtOp("*") ? StarExpr() : NamedExprTest();
      if (AtOp(":")) {
        is_dict = true;
        Next();
        items.push_back(first);
        items.push_back(Test());
      } else {
        items.push_back(first);
      }
    }
    if (AtCompFor()) {
      ExprId comp = Comprehension(at, std::move(items));
      ExpectOp("}");
      return comp;
    }
    while (AtOp(",")) {
      Next();
      if (AtOp("}")) break;
      if (is_dict) {
        dict_item();
      } else {
        items.push_back(AtOp("*") ? StarExpr() : NamedExprTest());
      }
    }
    ExpectOp("}");
    return NewExpr(is_dict ? ExprKind::kDict : ExprKind::kSet, "",
                   std::move(items), at);
  }

  ExprId Atom() {
    const Token& at = Peek();
    switch (at.type) {
      case TokenType::kNumber:
        Next();
        return NewExpr(ExprKind::kConstant, at.text, {}, at);
      case TokenType::kString: {
        std::string text;
        while (At(TokenType::kString)) {
          if (!text.empty()) text += ' ';
          text += Next().text;
        }
        return NewExpr(ExprKind::kConstant, std::move(text), {}, at);
      }
      case TokenType::kName: {
        if (at.text == "None" || at.text == "True" || at.text == "False") {
          Next();
          return NewExpr(ExprKind::kConstant, at.text, {}, at);
        }
        if (IsKeyword(at.text)) Fail("invalid syntax");
        Next();
        return NewExpr(ExprKind::kName, at.text, {}, at);
      }
      case TokenType::kOp: {
        if (at.text == "...") {
          Next();
          return NewExpr(ExprKind::kConstant, "...", {}, at);
        }
        if (at.text == "(") {
          Next();
          if (AtKw("yield")) {
            ExprId y = YieldExpr();
            ExpectOp(")");
            return y;
          }
          return ListLike(at, ")", ExprKind::kTuple);
        }
        if (at.text == "[") {
          Next();
          return ListLike(at, "]", ExprKind::kList);
        }
        if (at.text == "{") {
          Next();
          return Braces(at);
        }
        break;
      }
      default:
        break;
    }
    Fail("invalid syntax");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  int last_line_ = 0;
  SyntaxTree tree_;
};

SyntaxTree ParseModule(std::string_view source) {
  return Parser(Tokenize(source)).Module();
}

SyntaxTree ParseMethod(std::string_view source) {
  SyntaxTree tree = ParseModule(source);
  if (tree.top_level_.size() != 1 ||
      tree.stmt(tree.top_level_[0]).type != StmtType::kFunctionDef) {
    int line = tree.top_level_.empty() ? 1
                                       : tree.stmt(tree.top_level_.back()).line;
    throw ParseError("expected exactly one function definition", line, 1);
  }
  tree.root_ = tree.top_level_[0];
  return tree;
}

}  // namespace codesoph::python
