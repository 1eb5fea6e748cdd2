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

#include "codesoph/cfg.h"

#include <algorithm>
#include <array>
#include <cassert>
#include <functional>
#include <map>
#include <tuple>

#include "codesoph/errors.h"

namespace codesoph {

using python::ExprId;
using python::ExprKind;
using python::kNoId;
using python::StmtId;
using python::StmtType;
using python::SyntaxTree;

namespace {

constexpr std::array<std::string_view, 4> kNodeKindNames = {
    "entry", "exit", "statement", "predicate"};
constexpr std::array<std::string_view, 3> kEdgeTagNames = {
    "fallthrough", "true", "false"};

}  // namespace

std::string_view Name(NodeKind kind) {
  return kNodeKindNames[static_cast<int>(kind)];
}

std::string_view Name(EdgeTag tag) {
  return kEdgeTagNames[static_cast<int>(tag)];
}

std::optional<NodeKind> NodeKindFromName(std::string_view name) {
  for (size_t i = 0; i < kNodeKindNames.size(); ++i) {
    if (kNodeKindNames[i] == name) return static_cast<NodeKind>(i);
  }
  return std::nullopt;
}

std::optional<EdgeTag> EdgeTagFromName(std::string_view name) {
  for (size_t i = 0; i < kEdgeTagNames.size(); ++i) {
    if (kEdgeTagNames[i] == name) return static_cast<EdgeTag>(i);
  }
  return std::nullopt;
}

ControlFlowGraph::ControlFlowGraph(std::vector<CfgNode> nodes,
                                   std::vector<CfgEdge> edges, int entry,
                                   int exit)
    : nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      entry_(entry),
      exit_(exit) {
  std::sort(edges_.begin(), edges_.end(),
            [](const CfgEdge& a, const CfgEdge& b) {
              return std::tie(a.src, a.dst, a.tag) <
                     std::tie(b.src, b.dst, b.tag);
            });
}

std::vector<int> ControlFlowGraph::OutEdges(int id) const {
  std::vector<int> out;
  for (int i = 0; i < num_edges(); ++i) {
    if (edges_[i].src == id) out.push_back(i);
  }
  return out;
}

std::vector<int> ControlFlowGraph::InEdges(int id) const {
  std::vector<int> in;
  for (int i = 0; i < num_edges(); ++i) {
    if (edges_[i].dst == id) in.push_back(i);
  }
  return in;
}

std::optional<int> ControlFlowGraph::FindEdge(int src, int dst) const {
  for (int i = 0; i < num_edges(); ++i) {
    if (edges_[i].src == src && edges_[i].dst == dst) return i;
  }
  return std::nullopt;
}

int ControlFlowGraph::Successor(int id, EdgeTag tag) const {
  for (const CfgEdge& e : edges_) {
    if (e.src == id && e.tag == tag) return e.dst;
  }
  return -1;
}

std::string ControlFlowGraph::Validate() const {
  const int n = num_nodes();
  if (n < 2) return "fewer than two nodes";
  int entries = 0;
  int exits = 0;
  for (int i = 0; i < n; ++i) {
    if (nodes_[i].id != i) return "non-dense node ids";
    if (nodes_[i].kind == NodeKind::kEntry) ++entries;
    if (nodes_[i].kind == NodeKind::kExit) ++exits;
    bool virtual_node = nodes_[i].kind == NodeKind::kEntry ||
                        nodes_[i].kind == NodeKind::kExit;
    if (virtual_node == nodes_[i].stmt_kind.has_value()) {
      return "stmt-kind presence mismatch at node " + std::to_string(i);
    }
  }
  if (entries != 1 || exits != 1) return "need exactly one entry and exit";
  if (nodes_[entry_].kind != NodeKind::kEntry ||
      nodes_[exit_].kind != NodeKind::kExit) {
    return "entry/exit ids do not point at entry/exit nodes";
  }
  std::vector<std::vector<int>> out(n);
  std::vector<std::vector<int>> in(n);
  for (size_t i = 0; i < edges_.size(); ++i) {
    const CfgEdge& e = edges_[i];
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
      return "edge endpoint out of range";
    }
    if (i > 0 && edges_[i - 1].src == e.src && edges_[i - 1].dst == e.dst) {
      return "duplicate edge";
    }
    out[e.src].push_back(static_cast<int>(i));
    in[e.dst].push_back(static_cast<int>(i));
  }
  if (!in[entry_].empty()) return "entry has incoming edges";
  if (!out[exit_].empty()) return "exit has outgoing edges";
  for (int i = 0; i < n; ++i) {
    if (i == exit_) continue;
    if (nodes_[i].kind == NodeKind::kPredicate) {
      if (out[i].size() != 2) return "predicate without two out-edges";
      EdgeTag a = edges_[out[i][0]].tag;
      EdgeTag b = edges_[out[i][1]].tag;
      if (!((a == EdgeTag::kTrueBranch && b == EdgeTag::kFalseBranch) ||
            (a == EdgeTag::kFalseBranch && b == EdgeTag::kTrueBranch))) {
        return "predicate out-edges not tagged true/false";
      }
    } else if (out[i].size() != 1) {
      return "node " + std::to_string(i) + " without exactly one out-edge";
    }
  }
  auto reach = [&](int start, bool forward) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack = {start};
    seen[start] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int ei : forward ? out[u] : in[u]) {
        int v = forward ? edges_[ei].dst : edges_[ei].src;
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    return seen;
  };
  auto from_entry = reach(entry_, true);
  auto to_exit = reach(exit_, false);
  for (int i = 0; i < n; ++i) {
    if (!from_entry[i]) return "node " + std::to_string(i) + " unreachable";
    if (!to_exit[i]) return "node " + std::to_string(i) + " cannot reach exit";
  }
  return "";
}

bool IsOpaqueCompound(const SyntaxTree& tree, StmtId id) {
  const python::Stmt& s = tree.stmt(id);
  switch (s.type) {
    case StmtType::kTry:
    case StmtType::kWith:
    case StmtType::kMatch:
    case StmtType::kFunctionDef:
    case StmtType::kClassDef:
      return true;
    case StmtType::kFor:
      return s.is_async;
    default:
      return false;
  }
}

StatementKind ClassifyStatement(const SyntaxTree& tree, StmtId id) {
  const python::Stmt& s = tree.stmt(id);
  switch (s.type) {
    case StmtType::kReturn:
      return StatementKind::kReturn;
    case StmtType::kAssign:
    case StmtType::kAnnAssign:
      return StatementKind::kAssign;
    case StmtType::kAugAssign:
      return StatementKind::kAugAssign;
    case StmtType::kRaise:
      return StatementKind::kRaise;
    case StmtType::kIf:
      return StatementKind::kIf;
    case StmtType::kFor:
      return s.is_async ? StatementKind::kOther : StatementKind::kFor;
    case StmtType::kWhile:
      return StatementKind::kWhile;
    case StmtType::kExpr:
      return StatementKind::kExpr;
    case StmtType::kBreak:
      return StatementKind::kBreak;
    case StmtType::kContinue:
      return StatementKind::kContinue;
    case StmtType::kPass:
      return StatementKind::kPass;
    default:
      return StatementKind::kOther;
  }
}

std::vector<ExprId> NodeExprs(const SyntaxTree& tree, StmtId id) {
  return tree.StatementExprs(id, IsOpaqueCompound(tree, id));
}

KindSet ExprKindsOf(const SyntaxTree& tree, StmtId id) {
  KindSet kinds;
  for (ExprId root : NodeExprs(tree, id)) {
    tree.VisitExpr(root, [&](ExprId e) {
      switch (tree.expr(e).kind) {
        case ExprKind::kCall:
          kinds.Insert(StatementKind::kCall);
          break;
        case ExprKind::kSubscript:
          kinds.Insert(StatementKind::kSubscript);
          break;
        case ExprKind::kBinOp:
          kinds.Insert(StatementKind::kBinOp);
          break;
        default:
          break;
      }
    });
  }
  return kinds;
}

namespace {

constexpr int kExitPlaceholder = -1;

struct Dangling {
  int node;
  EdgeTag tag;
};

struct LoopContext {
  int predicate;
  std::vector<Dangling> breaks;
};

class CfgBuilder {
 public:
  explicit CfgBuilder(const SyntaxTree& tree) : tree_(tree) {}

  ControlFlowGraph Build() {
    int entry = AddNode(NodeKind::kEntry, kNoId);
    std::vector<Dangling> out =
        Block(tree_.method().body, {{entry, EdgeTag::kFallthrough}}, nullptr);
    int exit = AddNode(NodeKind::kExit, kNoId);
    Connect(out, exit);
    for (CfgEdge& e : edges_) {
      if (e.dst == kExitPlaceholder) e.dst = exit;
    }
    return ControlFlowGraph(std::move(nodes_), std::move(edges_), entry, exit);
  }

 private:
  int AddNode(NodeKind kind, StmtId stmt) {
    CfgNode node;
    node.id = static_cast<int>(nodes_.size());
    node.kind = kind;
    node.stmt = stmt;
    if (stmt != kNoId) {
      const python::Stmt& s = tree_.stmt(stmt);
      node.stmt_kind = ClassifyStatement(tree_, stmt);
      node.expr_kinds = ExprKindsOf(tree_, stmt);
      if (kind == NodeKind::kPredicate) {
        int header_end = s.line;
        if (!s.body.empty()) {
          header_end = std::max(s.line, tree_.stmt(s.body.front()).line - 1);
        }
        node.span = {s.line, header_end};
      } else {
        node.span = {s.line, s.end_line};
      }
    }
    nodes_.push_back(node);
    return node.id;
  }

  void Connect(const std::vector<Dangling>& from, int to) {
    for (const Dangling& d : from) edges_.push_back({d.node, to, d.tag});
  }

  std::vector<Dangling> Block(const std::vector<StmtId>& stmts,
                              std::vector<Dangling> in, LoopContext* loop) {
    for (StmtId id : stmts) {
      if (in.empty()) break;  // dead code after a jump
      in = Statement(id, std::move(in), loop);
    }
    return in;
  }

  std::vector<Dangling> Statement(StmtId id, std::vector<Dangling> in,
                                  LoopContext* loop) {
    const python::Stmt& s = tree_.stmt(id);
    StatementKind kind = ClassifyStatement(tree_, id);
    switch (kind) {
      case StatementKind::kIf: {
        int p = AddNode(NodeKind::kPredicate, id);
        Connect(in, p);
        auto out = Block(s.body, {{p, EdgeTag::kTrueBranch}}, loop);
        if (s.orelse.empty()) {
          out.push_back({p, EdgeTag::kFalseBranch});
        } else {
          auto alt = Block(s.orelse, {{p, EdgeTag::kFalseBranch}}, loop);
          out.insert(out.end(), alt.begin(), alt.end());
        }
        return out;
      }
      case StatementKind::kFor:
      case StatementKind::kWhile: {
        int p = AddNode(NodeKind::kPredicate, id);
        Connect(in, p);
        LoopContext ctx{p, {}};
        auto body_out = Block(s.body, {{p, EdgeTag::kTrueBranch}}, &ctx);
        Connect(body_out, p);
        std::vector<Dangling> out;
        if (s.orelse.empty()) {
          out.push_back({p, EdgeTag::kFalseBranch});
        } else {
          out = Block(s.orelse, {{p, EdgeTag::kFalseBranch}}, loop);
        }
        out.insert(out.end(), ctx.breaks.begin(), ctx.breaks.end());
        return out;
      }
      default:
        break;
    }
    int n = AddNode(NodeKind::kStatement, id);
    Connect(in, n);
    switch (kind) {
      case StatementKind::kReturn:
      case StatementKind::kRaise:
        edges_.push_back({n, kExitPlaceholder, EdgeTag::kFallthrough});
        return {};
      case StatementKind::kBreak:
        if (loop == nullptr) {
          throw CfgError("'break' outside loop at line " +
                         std::to_string(s.line));
        }
        loop->breaks.push_back({n, EdgeTag::kFallthrough});
        return {};
      case StatementKind::kContinue:
        if (loop == nullptr) {
          throw CfgError("'continue' outside loop at line " +
                         std::to_string(s.line));
        }
        edges_.push_back({n, loop->predicate, EdgeTag::kFallthrough});
        return {};
      default:
        return {{n, EdgeTag::kFallthrough}};
    }
  }

  const SyntaxTree& tree_;
  std::vector<CfgNode> nodes_;
  std::vector<CfgEdge> edges_;
};

}  // namespace

ControlFlowGraph BuildCfg(const SyntaxTree& tree) {
  assert(tree.root() != kNoId);
  return CfgBuilder(tree).Build();
}

PathEnumeration EnumeratePaths(const ControlFlowGraph& cfg, int max_paths) {
  assert(max_paths > 0);
  const int n = cfg.num_nodes();
  std::vector<int> succ_true(n, -1), succ_false(n, -1), succ_fall(n, -1);
  for (const CfgEdge& e : cfg.edges()) {
    switch (e.tag) {
      case EdgeTag::kTrueBranch:
        succ_true[e.src] = e.dst;
        break;
      case EdgeTag::kFalseBranch:
        succ_false[e.src] = e.dst;
        break;
      case EdgeTag::kFallthrough:
        succ_fall[e.src] = e.dst;
        break;
    }
  }
  auto is_loop = [&](int id) {
    const CfgNode& node = cfg.node(id);
    return node.kind == NodeKind::kPredicate &&
           (node.stmt_kind == StatementKind::kWhile ||
            node.stmt_kind == StatementKind::kFor);
  };

  PathEnumeration result;
  std::vector<int> path;
  std::vector<int> visits(n, 0);
  std::function<void(int, bool)> step = [&](int v, bool forced_exit) {
    if (result.truncated) return;
    path.push_back(v);
    ++visits[v];
    if (v == cfg.exit()) {
      if (static_cast<int>(result.paths.size()) >= max_paths) {
        result.truncated = true;
      } else {
        result.paths.push_back(path);
      }
    } else {
      std::vector<int> next;
      if (forced_exit) {
        next = {succ_false[v]};
      } else if (cfg.node(v).kind == NodeKind::kPredicate) {
        next = {succ_true[v], succ_false[v]};
      } else {
        next = {succ_fall[v]};
      }
      for (int w : next) {
        if (w < 0) continue;
        if (visits[w] == 0) {
          step(w, false);
        } else if (visits[w] == 1 && is_loop(w)) {
          step(w, true);  // back edge: second visit leaves the loop
        }
      }
    }
    --visits[v];
    path.pop_back();
  };
  step(cfg.entry(), false);
  std::sort(result.paths.begin(), result.paths.end());
  return result;
}

bool IsomorphicCfg(const ControlFlowGraph& a, const ControlFlowGraph& b) {
  if (a.num_nodes() != b.num_nodes() || a.num_edges() != b.num_edges()) {
    return false;
  }
  auto same_node = [](const CfgNode& x, const CfgNode& y) {
    return x.kind == y.kind && x.stmt_kind == y.stmt_kind &&
           x.expr_kinds == y.expr_kinds;
  };
  auto tagged_out = [](const ControlFlowGraph& g, int id) {
    std::vector<std::pair<EdgeTag, int>> out;
    for (int ei : g.OutEdges(id)) {
      out.push_back({g.edges()[ei].tag, g.edges()[ei].dst});
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  // Out-edges carry distinct tags at every node, so a simultaneous traversal
  // from Entry fixes the only candidate bijection.
  std::vector<int> a_to_b(a.num_nodes(), -1);
  std::vector<int> b_to_a(b.num_nodes(), -1);
  std::vector<std::pair<int, int>> stack = {{a.entry(), b.entry()}};
  a_to_b[a.entry()] = b.entry();
  b_to_a[b.entry()] = a.entry();
  while (!stack.empty()) {
    auto [u, v] = stack.back();
    stack.pop_back();
    if (!same_node(a.node(u), b.node(v))) return false;
    auto ou = tagged_out(a, u);
    auto ov = tagged_out(b, v);
    if (ou.size() != ov.size()) return false;
    for (size_t i = 0; i < ou.size(); ++i) {
      if (ou[i].first != ov[i].first) return false;
      int x = ou[i].second;
      int y = ov[i].second;
      if (a_to_b[x] == -1 && b_to_a[y] == -1) {
        a_to_b[x] = y;
        b_to_a[y] = x;
        stack.push_back({x, y});
      } else if (a_to_b[x] != y || b_to_a[y] != x) {
        return false;
      }
    }
  }
  for (int x : a_to_b) {
    if (x == -1) return false;
  }
  return true;
}

ControlFlowGraph RemoveNodes(const ControlFlowGraph& cfg,
                             const std::vector<bool>& drop,
                             std::vector<CfgEdge> extra_edges,
                             std::vector<int>* remap) {
  assert(static_cast<int>(drop.size()) == cfg.num_nodes());
  std::vector<int> map(cfg.num_nodes(), -1);
  std::vector<CfgNode> nodes;
  for (const CfgNode& node : cfg.nodes()) {
    if (drop[node.id]) continue;
    map[node.id] = static_cast<int>(nodes.size());
    CfgNode copy = node;
    copy.id = map[node.id];
    nodes.push_back(copy);
  }
  std::vector<CfgEdge> edges;
  auto add = [&](const CfgEdge& e) {
    if (map[e.src] == -1 || map[e.dst] == -1) return;
    edges.push_back({map[e.src], map[e.dst], e.tag});
  };
  for (const CfgEdge& e : cfg.edges()) add(e);
  for (const CfgEdge& e : extra_edges) add(e);
  int entry = map[cfg.entry()];
  int exit = map[cfg.exit()];
  if (remap != nullptr) *remap = map;
  return ControlFlowGraph(std::move(nodes), std::move(edges), entry, exit);
}

}  // namespace codesoph
