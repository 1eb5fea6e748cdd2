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


#ifndef CODESOPH_LABELING_H_
#define CODESOPH_LABELING_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codesoph/cfg.h"
#include "codesoph/miner.h"
#include "codesoph/python_ast.h"

namespace codesoph {

enum class DropReason {
  kParseFail,           // before or after source does not parse
  kCfgFail,             // CFG construction rejected a method
  kParseDiffFail,       // tree diff disagrees with the record's polarity
  kNoSite,              // insertion site not locatable
  kAmbiguousInsertion,  // else clause, wrapping, or several predecessors
  kPruneMismatch,       // pruned CFG differs from the pre-commit CFG
  kNoLabel,             // added branch holds no label-class construct
};

std::string_view Name(DropReason reason);  // "AMBIGUOUS_INSERTION", ...
std::optional<DropReason> DropReasonFromName(std::string_view name);

struct LabeledExample {
  RecordKey key;
  int block_index = 0;  // which added block of the method (positives)
  ControlFlowGraph cfg;  // pre-commit graph (pruned for positives)
  Edge candidate_edge;
  bool is_extension_point = false;
  KindSet labels;  // label classes only
  // Tree the node statement ids of `cfg` point into: the post-commit tree
  // for positives, the pre-commit tree for negatives.
  std::shared_ptr<const python::SyntaxTree> tree;
  // Pre-commit tree, used for input extraction.
  std::shared_ptr<const python::SyntaxTree> before_tree;
};

struct DroppedExample {
  RecordKey key;
  int block_index = 0;
  DropReason reason;
  std::string detail;
};

struct PruneResult {
  ControlFlowGraph cfg;
  // One candidate edge per added block, in source order (pruned-graph ids).
  std::vector<Edge> candidate_edges;
  // Added `if` statements of the after tree, outermost only.
  std::vector<python::StmtId> blocks;
};

// Statement ids of the outermost `if` statements of `after` lying entirely
// on added lines. Fails with kAmbiguousInsertion when an added `if` carries
// an else branch or wraps lines that already existed.
struct AddedBlocks {
  std::vector<python::StmtId> blocks;
  std::optional<DropReason> failure;
  std::string detail;
};
AddedBlocks FindAddedBlocks(const python::SyntaxTree& after,
                            std::string_view after_source,
                            const std::vector<LineSpan>& added_spans);

// Removes the added blocks (and any other statement wholly made of added
// lines) from the post-commit CFG, reconnecting each block's predecessor to
// the predicate's false-branch successor. On failure `result` is empty and
// `reason` tells why.
struct PruneOutcome {
  std::optional<PruneResult> result;
  DropReason reason = DropReason::kAmbiguousInsertion;
  std::string detail;
};
PruneOutcome PruneAddedPath(const ControlFlowGraph& after_cfg,
                            const python::SyntaxTree& after,
                            std::string_view after_source,
                            const std::vector<LineSpan>& added_spans);

// Label classes used by the body of the added `if` statement `block`,
// descending into nested statements. The block's own condition is excluded.
KindSet BlockLabels(const python::SyntaxTree& after, python::StmtId block);

// Edge of the pre-commit CFG at which the first added span was inserted.
std::optional<Edge> NegativeCandidateEdge(const ControlFlowGraph& before_cfg,
                                          std::string_view before_source,
                                          std::string_view after_source,
                                          const std::vector<LineSpan>& spans);

struct LabelingResult {
  std::vector<LabeledExample> examples;
  std::vector<DroppedExample> drops;
  // For positives that reached the round-trip check: whether the pruned
  // graph matched. Absent otherwise.
  std::optional<bool> isomorphic;
};

LabelingResult LabelRecord(const MethodChangeRecord& record);

}  // namespace codesoph

#endif  // CODESOPH_LABELING_H_
