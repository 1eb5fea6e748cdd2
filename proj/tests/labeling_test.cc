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

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "codesoph/cfg.h"
#include "codesoph/labeling.h"
#include "codesoph/python_parser.h"
#include "codesoph/rng.h"
#include "testing/append_point_example.h"
#include "testing/random_program.h"
#include "testing/records.h"

namespace codesoph {
namespace {

using testing::RecordFromMethods;

KindSet Kinds(std::initializer_list<StatementKind> kinds) {
  KindSet out;
  for (StatementKind k : kinds) out.Insert(k);
  return out;
}

ControlFlowGraph Cfg(const std::string& source) {
  return BuildCfg(python::ParseMethod(source));
}

DropReason SingleDrop(const LabelingResult& result) {
  EXPECT_TRUE(result.examples.empty());
  EXPECT_EQ(result.drops.size(), 1u);
  return result.drops.empty() ? DropReason::kParseFail
                              : result.drops[0].reason;
}

TEST(LabelingTest, RunningExample) {
  MethodChangeRecord record = RecordFromMethods(
      testing::kAppendPointBeforeMethod, testing::kAppendPointAfterMethod);
  ASSERT_EQ(record.polarity, Polarity::kPathAdding);
  LabelingResult result = LabelRecord(record);
  ASSERT_TRUE(result.drops.empty()) << result.drops[0].detail;
  ASSERT_EQ(result.examples.size(), 1u);
  EXPECT_EQ(result.isomorphic, true);
  const LabeledExample& ex = result.examples[0];
  EXPECT_TRUE(ex.is_extension_point);
  EXPECT_EQ(ex.block_index, 0);
  EXPECT_EQ(ex.key, record.key());
  EXPECT_TRUE(IsomorphicCfg(ex.cfg, Cfg(testing::kAppendPointBeforeMethod)));
  EXPECT_EQ(ex.candidate_edge, (Edge{1, 2}));
  EXPECT_EQ(ex.labels, Kinds({StatementKind::kAssign, StatementKind::kCall}));
  ASSERT_NE(ex.tree, nullptr);
  ASSERT_NE(ex.before_tree, nullptr);
  // Node spans of the pruned graph refer to post-commit lines.
  EXPECT_EQ(ex.cfg.node(2).span, (LineSpan{6, 6}));
}

TEST(LabelingTest, GuardBeforeReturnRaises) {
  const std::string before =
      "def f(self, x):\n    a = x\n    b = a\n    return b\n";
  const std::string after =
      "def f(self, x):\n    a = x\n    b = a\n    if x is None:\n"
      "        raise ValueError(x)\n    return b\n";
  LabelingResult result = LabelRecord(RecordFromMethods(before, after));
  ASSERT_EQ(result.examples.size(), 1u);
  EXPECT_EQ(result.examples[0].candidate_edge, (Edge{2, 3}));
  EXPECT_EQ(result.examples[0].labels,
            Kinds({StatementKind::kRaise, StatementKind::kCall}));
}

TEST(LabelingTest, ConditionDoesNotContributeLabels) {
  const std::string before = "def f(self, x):\n    return x\n";
  const std::string after =
      "def f(self, x):\n    if self.check(x[0] + 1):\n        x = 0\n"
      "    return x\n";
  LabelingResult result = LabelRecord(RecordFromMethods(before, after));
  ASSERT_EQ(result.examples.size(), 1u);
  EXPECT_EQ(result.examples[0].candidate_edge, (Edge{0, 1}));
  EXPECT_EQ(result.examples[0].labels, Kinds({StatementKind::kAssign}));
}

TEST(LabelingTest, NestedBodyConstructsAreLabels) {
  const std::string before = "def f(self, xs):\n    return xs\n";
  const std::string after =
      "def f(self, xs):\n    if xs:\n        for x in xs:\n"
      "            if x:\n                self.n += x * 2\n"
      "    return xs\n";
  LabelingResult result = LabelRecord(RecordFromMethods(before, after));
  ASSERT_EQ(result.examples.size(), 1u);
  EXPECT_EQ(result.examples[0].labels,
            Kinds({StatementKind::kIf, StatementKind::kAugAssign,
                   StatementKind::kBinOp}));
}

TEST(LabelingTest, PassBodyHasNoLabel) {
  LabelingResult result = LabelRecord(RecordFromMethods(
      "def f(x):\n    return x\n",
      "def f(x):\n    if x:\n        pass\n    return x\n"));
  EXPECT_EQ(SingleDrop(result), DropReason::kNoLabel);
  EXPECT_EQ(result.isomorphic, true);
}

TEST(LabelingTest, ElseBranchIsAmbiguous) {
  LabelingResult result = LabelRecord(RecordFromMethods(
      "def f(x):\n    return x\n",
      "def f(x):\n    if x:\n        x = 1\n    else:\n        x = 2\n"
      "    return x\n"));
  EXPECT_EQ(SingleDrop(result), DropReason::kAmbiguousInsertion);
  EXPECT_FALSE(result.isomorphic.has_value());
}

TEST(LabelingTest, JoinPointPredecessorsAreAmbiguous) {
  LabelingResult result = LabelRecord(RecordFromMethods(
      "def f(x):\n    if x:\n        a = 1\n    else:\n        a = 2\n"
      "    return a\n",
      "def f(x):\n    if x:\n        a = 1\n    else:\n        a = 2\n"
      "    if a > 1:\n        a = 0\n    return a\n"));
  EXPECT_EQ(SingleDrop(result), DropReason::kAmbiguousInsertion);
}

TEST(LabelingTest, UnreachableOrOpaqueSitesAreNotLocatable) {
  EXPECT_EQ(SingleDrop(LabelRecord(RecordFromMethods(
                "def f(x):\n    return x\n",
                "def f(x):\n    return x\n    if x:\n        x = 1\n"))),
            DropReason::kNoSite);
  EXPECT_EQ(
      SingleDrop(LabelRecord(RecordFromMethods(
          "def f(x):\n    try:\n        y = x\n    except E:\n"
          "        y = 0\n    return y\n",
          "def f(x):\n    try:\n        y = x\n        if y:\n"
          "            y = 1\n    except E:\n        y = 0\n    return y\n"))),
      DropReason::kNoSite);
}

TEST(LabelingTest, OtherEditsBreakTheRoundTrip) {
  LabelingResult result = LabelRecord(RecordFromMethods(
      "def f(x):\n    a = 1\n    return a\n",
      "def f(x):\n    a += 1\n    if x:\n        a = 2\n    return a\n"));
  EXPECT_EQ(SingleDrop(result), DropReason::kPruneMismatch);
  EXPECT_EQ(result.isomorphic, false);
}

TEST(LabelingTest, AddedSimpleStatementsArePrunedToo) {
  LabelingResult result = LabelRecord(RecordFromMethods(
      "def f(x):\n    a = 1\n    return a\n",
      "def f(x):\n    a = 1\n    log(a)\n    if x:\n        a = 2\n"
      "    return a\n"));
  ASSERT_EQ(result.examples.size(), 1u);
  EXPECT_EQ(result.examples[0].candidate_edge, (Edge{1, 2}));
}

TEST(LabelingTest, SeveralBlocksGiveSeveralExamples) {
  LabelingResult result = LabelRecord(RecordFromMethods(
      "def f(x):\n    a = 1\n    b = 2\n    return a\n",
      "def f(x):\n    if x:\n        return 0\n    a = 1\n    b = 2\n"
      "    if b:\n        a = x[b]\n    return a\n"));
  ASSERT_EQ(result.examples.size(), 2u);
  EXPECT_EQ(result.examples[0].block_index, 0);
  EXPECT_EQ(result.examples[0].candidate_edge, (Edge{0, 1}));
  EXPECT_EQ(result.examples[0].labels, Kinds({StatementKind::kReturn}));
  EXPECT_EQ(result.examples[1].block_index, 1);
  EXPECT_EQ(result.examples[1].candidate_edge, (Edge{2, 3}));
  EXPECT_EQ(result.examples[1].labels,
            Kinds({StatementKind::kAssign, StatementKind::kSubscript}));
}

TEST(LabelingTest, PolarityWithoutAddedIfIsAParseDiffFailure) {
  MethodChangeRecord record = RecordFromMethods(
      "def f(x):\n    return x\n", "def f(x):\n    x = 1\n    return x\n");
  record.polarity = Polarity::kPathAdding;
  EXPECT_EQ(SingleDrop(LabelRecord(record)), DropReason::kParseDiffFail);
}

TEST(LabelingTest, ParseAndCfgFailures) {
  MethodChangeRecord record = RecordFromMethods(
      "def f(x):\n    return x\n", "def f(x):\n    x = 1\n    return x\n");
  MethodChangeRecord broken = record;
  broken.after_source = "def f(x):\n    x = = 1\n";
  EXPECT_EQ(SingleDrop(LabelRecord(broken)), DropReason::kParseFail);
  MethodChangeRecord jump = record;
  jump.after_source = "def f(x):\n    break\n";
  EXPECT_EQ(SingleDrop(LabelRecord(jump)), DropReason::kCfgFail);
}

TEST(FindAddedBlocksTest, WrappingExistingLinesIsAmbiguous) {
  const std::string after =
      "def f(x):\n    if x:\n        y = 1\n    return y\n";
  python::SyntaxTree tree = python::ParseMethod(after);
  AddedBlocks wrapped = FindAddedBlocks(tree, after, {{2, 2}});
  EXPECT_EQ(wrapped.failure, DropReason::kAmbiguousInsertion);
  AddedBlocks whole = FindAddedBlocks(tree, after, {{2, 3}});
  EXPECT_FALSE(whole.failure.has_value());
  EXPECT_EQ(whole.blocks.size(), 1u);
}

TEST(NegativeEdgeTest, AnchorsAtTheLastPrecedingStatement) {
  const std::string before = "def f(x):\n    a = x\n    log(a)\n";
  ControlFlowGraph cfg = Cfg(before);
  auto record = [&](const std::string& after) {
    return RecordFromMethods(before, after);
  };
  auto edge = [&](const MethodChangeRecord& r) {
    return NegativeCandidateEdge(cfg, r.before_source, r.after_source,
                                 r.added_line_spans);
  };
  EXPECT_EQ(edge(record("def f(x):\n    b = 0\n    a = x\n    log(a)\n")),
            (Edge{0, 1}));
  EXPECT_EQ(edge(record("def f(x):\n    a = x\n    b = 0\n    log(a)\n")),
            (Edge{1, 2}));
  EXPECT_EQ(edge(record("def f(x):\n    a = x\n    log(a)\n    b = 0\n")),
            (Edge{2, 3}));
}

TEST(NegativeEdgeTest, AfterPredicateHeaderUsesTheTrueBranch) {
  const std::string before =
      "def f(x):\n    if x:\n        a = 1\n    return a\n";
  MethodChangeRecord r = RecordFromMethods(
      before, "def f(x):\n    if x:\n        b = 2\n        a = 1\n"
              "    return a\n");
  LabelingResult result = LabelRecord(r);
  ASSERT_EQ(result.examples.size(), 1u);
  const LabeledExample& ex = result.examples[0];
  EXPECT_FALSE(ex.is_extension_point);
  EXPECT_TRUE(ex.labels.empty());
  EXPECT_EQ(ex.candidate_edge, (Edge{1, 2}));
  EXPECT_EQ(ex.cfg.node(1).kind, NodeKind::kPredicate);
}

// Inserting a guarded block between two top-level simple statements of a
// random method: round trip holds and the candidate edge joins the two.
TEST(LabelingPropertyTest, RandomInsertionsRoundTrip) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    testing::RandomProgram program =
        testing::RandomProgramBuilder(seed, {}).Build();
    python::SyntaxTree before_tree = python::ParseMethod(program.source);
    const auto& body = before_tree.method().body;
    // Longest prefix of simple, non-jump statements.
    size_t prefix = 0;
    while (prefix < body.size()) {
      const python::Stmt& s = before_tree.stmt(body[prefix]);
      if (s.type != python::StmtType::kAssign &&
          s.type != python::StmtType::kExpr &&
          s.type != python::StmtType::kAugAssign &&
          s.type != python::StmtType::kDelete &&
          s.type != python::StmtType::kPass) {
        break;
      }
      ++prefix;
    }
    if (prefix == 0 || prefix == body.size()) continue;
    Rng rng(seed);
    size_t k = 1 + rng.Below(prefix);
    if (k >= body.size()) continue;
    int insert_line = before_tree.stmt(body[k]).line;

    std::vector<std::string> lines;
    size_t pos = 0;
    while (pos < program.source.size()) {
      size_t nl = program.source.find('\n', pos);
      lines.push_back(program.source.substr(pos, nl - pos + 1));
      pos = nl + 1;
    }
    std::string after;
    for (int i = 0; i < static_cast<int>(lines.size()); ++i) {
      if (i + 1 == insert_line) {
        after += "    if q is None:\n        self.z = p[0]\n";
      }
      after += lines[i];
    }

    SCOPED_TRACE(after);
    LabelingResult result = LabelRecord(RecordFromMethods(program.source, after));
    ASSERT_EQ(result.examples.size(), 1u) << Name(result.drops[0].reason);
    const LabeledExample& ex = result.examples[0];
    ControlFlowGraph before_cfg = BuildCfg(before_tree);
    EXPECT_TRUE(IsomorphicCfg(ex.cfg, before_cfg));
    int src = -1;
    int dst = -1;
    for (const CfgNode& node : before_cfg.nodes()) {
      if (node.stmt == body[k - 1]) src = node.id;
      if (node.stmt == body[k]) dst = node.id;
    }
    EXPECT_EQ(ex.candidate_edge, (Edge{src, dst}));
    EXPECT_EQ(ex.labels,
              Kinds({StatementKind::kAssign, StatementKind::kSubscript}));
    ++checked;
  }
  EXPECT_GE(checked, 50);
}

}  // namespace
}  // namespace codesoph
