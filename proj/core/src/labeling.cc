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

#include "codesoph/labeling.h"

#include <algorithm>
#include <array>
#include <set>

#include "codesoph/errors.h"
#include "codesoph/line_diff.h"
#include "codesoph/python_lexer.h"
#include "codesoph/python_parser.h"

namespace codesoph {

using python::StmtId;
using python::StmtType;
using python::SyntaxTree;

namespace {

constexpr std::array<std::pair<DropReason, std::string_view>, 7> kReasonNames =
    {{
        {DropReason::kParseFail, "PARSE_FAIL"},
        {DropReason::kCfgFail, "CFG_FAIL"},
        {DropReason::kParseDiffFail, "PARSE_DIFF_FAIL"},
        {DropReason::kNoSite, "NO_SITE"},
        {DropReason::kAmbiguousInsertion, "AMBIGUOUS_INSERTION"},
        {DropReason::kPruneMismatch, "PRUNE_MISMATCH"},
        {DropReason::kNoLabel, "NO_LABEL"},
    }};

std::set<int> AddedLines(const std::vector<LineSpan>& spans) {
  std::set<int> lines;
  for (const LineSpan& span : spans) {
    for (int l = span.start; l <= span.end; ++l) lines.insert(l);
  }
  return lines;
}

// Code lines of [first, last]: whether all / any of them are added.
struct Coverage {
  bool all = true;
  bool any = false;
};

Coverage Cover(const std::vector<int>& code_lines, const std::set<int>& added,
               int first, int last) {
  Coverage c;
  bool seen = false;
  auto it = std::lower_bound(code_lines.begin(), code_lines.end(), first);
  for (; it != code_lines.end() && *it <= last; ++it) {
    seen = true;
    if (added.count(*it)) {
      c.any = true;
    } else {
      c.all = false;
    }
  }
  if (!seen) c.all = false;
  return c;
}

std::vector<int> SourceCodeLines(std::string_view source) {
  return python::CodeLines(python::Tokenize(source));
}

}  // namespace

std::string_view Name(DropReason reason) {
  for (const auto& [r, name] : kReasonNames) {
    if (r == reason) return name;
  }
  return "UNKNOWN";
}

std::optional<DropReason> DropReasonFromName(std::string_view name) {
  for (const auto& [r, n] : kReasonNames) {
    if (n == name) return r;
  }
  return std::nullopt;
}

AddedBlocks FindAddedBlocks(const SyntaxTree& after,
                            std::string_view after_source,
                            const std::vector<LineSpan>& added_spans) {
  AddedBlocks out;
  const std::set<int> added = AddedLines(added_spans);
  const std::vector<int> code = SourceCodeLines(after_source);
  after.VisitStmt(after.root(), [&](StmtId id) {
    if (out.failure) return;
    const python::Stmt& s = after.stmt(id);
    if (s.type != StmtType::kIf || !added.count(s.line)) return;
    for (StmtId b : out.blocks) {
      const python::Stmt& outer = after.stmt(b);
      if (s.line > outer.line && s.end_line <= outer.end_line) return;
    }
    if (!Cover(code, added, s.line, s.end_line).all) {
      out.failure = DropReason::kAmbiguousInsertion;
      out.detail = "added if at line " + std::to_string(s.line) +
                   " wraps pre-existing lines";
      return;
    }
    if (!s.orelse.empty()) {
      out.failure = DropReason::kAmbiguousInsertion;
      out.detail = "added if at line " + std::to_string(s.line) +
                   " has an else branch";
      return;
    }
    out.blocks.push_back(id);
  });
  if (out.failure) out.blocks.clear();
  return out;
}

PruneOutcome PruneAddedPath(const ControlFlowGraph& after_cfg,
                            const SyntaxTree& after,
                            std::string_view after_source,
                            const std::vector<LineSpan>& added_spans) {
  PruneOutcome outcome;
  auto fail = [&](DropReason reason, std::string detail) {
    outcome.result.reset();
    outcome.reason = reason;
    outcome.detail = std::move(detail);
    return outcome;
  };
  AddedBlocks found = FindAddedBlocks(after, after_source, added_spans);
  if (found.failure) return fail(*found.failure, found.detail);
  if (found.blocks.empty()) {
    return fail(DropReason::kNoSite, "no added if block on added lines");
  }

  const int n = after_cfg.num_nodes();
  std::vector<int> node_of(after.num_stmts(), -1);
  for (const CfgNode& node : after_cfg.nodes()) {
    if (node.stmt != python::kNoId) node_of[node.stmt] = node.id;
  }

  enum class Role { kKept, kBlock, kBody, kExtra };
  std::vector<Role> role(n, Role::kKept);
  std::vector<int> block_of(n, -1);
  std::vector<bool> in_block(after.num_stmts(), false);
  const int num_blocks = static_cast<int>(found.blocks.size());
  for (int b = 0; b < num_blocks; ++b) {
    StmtId block = found.blocks[b];
    int p = node_of[block];
    if (p == -1) {
      return fail(DropReason::kNoSite,
                  "added if at line " + std::to_string(after.stmt(block).line) +
                      " has no CFG node");
    }
    const int preds = static_cast<int>(after_cfg.InEdges(p).size());
    if (preds != 1) {
      return fail(DropReason::kAmbiguousInsertion,
                  "added if at line " + std::to_string(after.stmt(block).line) +
                      " has " + std::to_string(preds) + " predecessors");
    }
    after.VisitStmt(block, [&](StmtId id) {
      in_block[id] = true;
      int node = node_of[id];
      if (node != -1 && node != p) role[node] = Role::kBody;
    });
    role[p] = Role::kBlock;
    block_of[p] = b;
  }

  // Other statements made only of added lines are removed as well so that
  // the pruned graph can match the pre-commit one.
  const std::set<int> added = AddedLines(added_spans);
  const std::vector<int> code = SourceCodeLines(after_source);
  for (const CfgNode& node : after_cfg.nodes()) {
    if (node.kind != NodeKind::kStatement || in_block[node.stmt]) continue;
    const python::Stmt& s = after.stmt(node.stmt);
    if (Cover(code, added, s.line, s.end_line).all) role[node.id] = Role::kExtra;
  }

  // Follows removed nodes to the first kept node; -1 when the chain enters an
  // added branch from outside or does not terminate.
  auto resolve = [&](int v, std::vector<int>& blocks_seen) {
    for (int steps = 0; steps <= n; ++steps) {
      switch (role[v]) {
        case Role::kKept:
          return v;
        case Role::kBlock:
          blocks_seen.push_back(block_of[v]);
          v = after_cfg.Successor(v, EdgeTag::kFalseBranch);
          break;
        case Role::kExtra: {
          std::vector<int> outs = after_cfg.OutEdges(v);
          if (outs.size() != 1) return -1;
          v = after_cfg.edges()[outs[0]].dst;
          break;
        }
        case Role::kBody:
          return -1;
      }
      if (v < 0) return -1;
    }
    return -1;
  };

  std::vector<CfgEdge> extra_edges;
  std::vector<std::optional<CfgEdge>> candidate(num_blocks);
  std::vector<bool> drop(n, false);
  for (int v = 0; v < n; ++v) drop[v] = role[v] != Role::kKept;
  for (const CfgEdge& e : after_cfg.edges()) {
    if (drop[e.src] || !drop[e.dst]) continue;
    std::vector<int> blocks_seen;
    int w = resolve(e.dst, blocks_seen);
    if (w == -1) {
      return fail(DropReason::kAmbiguousInsertion,
                  "edge from node " + std::to_string(e.src) +
                      " cannot be reconnected past the added lines");
    }
    CfgEdge reconnect{e.src, w, e.tag};
    extra_edges.push_back(reconnect);
    for (int b : blocks_seen) {
      if (candidate[b]) {
        return fail(DropReason::kAmbiguousInsertion,
                    "added block reached through several edges");
      }
      candidate[b] = reconnect;
    }
  }
  for (int b = 0; b < num_blocks; ++b) {
    if (!candidate[b]) {
      return fail(DropReason::kNoSite, "added block is unreachable");
    }
  }

  std::vector<int> remap;
  ControlFlowGraph pruned = RemoveNodes(after_cfg, drop, extra_edges, &remap);
  for (int i = 1; i < pruned.num_edges(); ++i) {
    const CfgEdge& a = pruned.edges()[i - 1];
    const CfgEdge& b = pruned.edges()[i];
    if (a.src == b.src && a.dst == b.dst) {
      return fail(DropReason::kAmbiguousInsertion,
                  "reconnection duplicates edge (" + std::to_string(a.src) +
                      ", " + std::to_string(a.dst) + ")");
    }
  }
  std::string violation = pruned.Validate();
  if (!violation.empty()) {
    return fail(DropReason::kPruneMismatch, "pruned graph invalid: " + violation);
  }
  PruneResult result;
  result.cfg = std::move(pruned);
  result.blocks = found.blocks;
  for (int b = 0; b < num_blocks; ++b) {
    result.candidate_edges.push_back(
        {remap[candidate[b]->src], remap[candidate[b]->dst]});
  }
  outcome.result = std::move(result);
  return outcome;
}

KindSet BlockLabels(const SyntaxTree& after, StmtId block) {
  KindSet kinds;
  for (StmtId top : after.stmt(block).body) {
    after.VisitStmt(top, [&](StmtId id) {
      StatementKind kind = ClassifyStatement(after, id);
      if (IsLabelClass(kind)) kinds.Insert(kind);
      kinds |= ExprKindsOf(after, id);
    });
  }
  return kinds.LabelClassesOnly();
}

std::optional<Edge> NegativeCandidateEdge(const ControlFlowGraph& before_cfg,
                                          std::string_view before_source,
                                          std::string_view after_source,
                                          const std::vector<LineSpan>& spans) {
  if (spans.empty()) return std::nullopt;
  LineAlignment align =
      AlignLines(SplitLines(before_source), SplitLines(after_source));
  const int first_added = spans.front().start - 1;
  if (first_added < 0 ||
      first_added >= static_cast<int>(align.after_to_before.size())) {
    return std::nullopt;
  }
  // Last pre-commit line preceding the insertion (1-based; 0 = none).
  int pos = 0;
  for (int i = first_added - 1; i >= 0; --i) {
    if (align.after_to_before[i] != -1) {
      pos = align.after_to_before[i] + 1;
      break;
    }
  }
  int prev = before_cfg.entry();
  int best = -1;
  for (const CfgNode& node : before_cfg.nodes()) {
    if (node.kind != NodeKind::kStatement && node.kind != NodeKind::kPredicate) {
      continue;
    }
    if (node.span.start <= pos && node.span.start > best) {
      best = node.span.start;
      prev = node.id;
    }
  }
  int next = before_cfg.node(prev).kind == NodeKind::kPredicate
                 ? before_cfg.Successor(prev, EdgeTag::kTrueBranch)
                 : before_cfg.Successor(prev, EdgeTag::kFallthrough);
  if (next < 0) return std::nullopt;
  return Edge{prev, next};
}

LabelingResult LabelRecord(const MethodChangeRecord& record) {
  LabelingResult result;
  auto drop = [&](DropReason reason, std::string detail, int block = 0) {
    result.drops.push_back({record.key(), block, reason, std::move(detail)});
  };
  std::shared_ptr<const SyntaxTree> before;
  std::shared_ptr<const SyntaxTree> after;
  try {
    before = std::make_shared<const SyntaxTree>(
        python::ParseMethod(record.before_source));
    after = std::make_shared<const SyntaxTree>(
        python::ParseMethod(record.after_source));
  } catch (const ParseError& e) {
    drop(DropReason::kParseFail, e.what());
    return result;
  }
  ControlFlowGraph before_cfg;
  ControlFlowGraph after_cfg;
  try {
    before_cfg = BuildCfg(*before);
    after_cfg = BuildCfg(*after);
  } catch (const CfgError& e) {
    drop(DropReason::kCfgFail, e.what());
    return result;
  }

  if (record.polarity == Polarity::kNonPathAdding) {
    std::optional<Edge> edge =
        NegativeCandidateEdge(before_cfg, record.before_source,
                              record.after_source, record.added_line_spans);
    if (!edge) {
      drop(DropReason::kNoSite, "insertion site not found");
      return result;
    }
    LabeledExample ex;
    ex.key = record.key();
    ex.cfg = std::move(before_cfg);
    ex.candidate_edge = *edge;
    ex.tree = before;
    ex.before_tree = before;
    result.examples.push_back(std::move(ex));
    return result;
  }

  if (AddedIfCount(record.before_source, record.after_source) == 0) {
    drop(DropReason::kParseDiffFail, "syntax-tree diff shows no added if");
    return result;
  }
  PruneOutcome pruned = PruneAddedPath(after_cfg, *after, record.after_source,
                                       record.added_line_spans);
  if (!pruned.result) {
    drop(pruned.reason, pruned.detail);
    return result;
  }
  const PruneResult& pr = *pruned.result;
  const int num_blocks = static_cast<int>(pr.blocks.size());
  const bool iso = IsomorphicCfg(pr.cfg, before_cfg);
  result.isomorphic = iso;
  if (!iso) {
    for (int b = 0; b < num_blocks; ++b) {
      drop(DropReason::kPruneMismatch,
           "pruned graph has " + std::to_string(pr.cfg.num_nodes()) +
               " nodes, pre-commit graph " +
               std::to_string(before_cfg.num_nodes()),
           b);
    }
    return result;
  }
  for (int b = 0; b < num_blocks; ++b) {
    KindSet labels = BlockLabels(*after, pr.blocks[b]);
    if (labels.empty()) {
      drop(DropReason::kNoLabel, "added branch has no label-class construct",
           b);
      continue;
    }
    LabeledExample ex;
    ex.key = record.key();
    ex.block_index = b;
    ex.cfg = pr.cfg;
    ex.candidate_edge = pr.candidate_edges[b];
    ex.is_extension_point = true;
    ex.labels = labels;
    ex.tree = after;
    ex.before_tree = before;
    result.examples.push_back(std::move(ex));
  }
  return result;
}

}  // namespace codesoph
