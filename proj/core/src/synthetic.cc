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

#include "codesoph/synthetic.h"

#include <stdexcept>

#include "codesoph/cfg.h"
#include "codesoph/python_parser.h"
#include "codesoph/rng.h"

namespace codesoph {

namespace {

struct Snippet {
  std::vector<std::string> lines;  // nested lines carry their own indent
  bool compound = false;
};

Snippet Simple(std::string line) { return {{std::move(line)}, false}; }
Snippet Block(std::string header, std::string body) {
  return {{std::move(header), "    " + std::move(body)}, true};
}

const std::vector<Snippet>& QuietFillers() {
  static const std::vector<Snippet> kFillers = {
      Simple("a = 1"),      Simple("b = a + 2"),   Simple("log(a)"),
      Simple("self.tick()"), Simple("c = [a, b]"), Simple("d = b * 3"),
  };
  return kFillers;
}

// Statements using inputs without a parameter inside an Assign.
const std::vector<Snippet>& NoisyFillers() {
  static const std::vector<Snippet> kFillers = {
      Simple("y = self.v"), Simple("log(p)"),     Simple("p.update(a)"),
      Simple("z += q"),     Simple("log(self.v)"), Simple("e = self.v[0]"),
  };
  return kFillers;
}

const std::vector<Snippet>& ParamAssigns() {
  static const std::vector<Snippet> kAssigns = {
      Simple("x = p"), Simple("t = q + 1"), Simple("u = p[0]"),
      Simple("p = a"),
  };
  return kAssigns;
}

const std::vector<Snippet>& Predicates() {
  static const std::vector<Snippet> kPredicates = {
      Block("if flag:", "a = 2"),
      Block("for i in range(3):", "a = i"),
      Block("while a < 3:", "a += 1"),
      Block("if p:", "log(a)"),
  };
  return kPredicates;
}

// Level 2 signal statements, indexed like kLabelClasses.
const std::vector<Snippet>& Signals() {
  static const std::vector<Snippet> kSignals = {
      Simple("return self.c"),       Simple("x = p"),
      Simple("z += p"),              Block("if flag:", "raise p"),
      Block("if p:", "w = 0"),       Simple("log(self.d)"),
      Simple("log(p[0])"),           Simple("w = self.e + 1"),
  };
  return kSignals;
}

const Snippet& Pick(const std::vector<Snippet>& pool, Rng& rng) {
  return pool[rng.Below(pool.size())];
}

struct Layout {
  std::string source;
  int last_before_line = 0;  // 0 when the before part is empty
};

Layout Render(const std::vector<Snippet>& before,
              const std::vector<Snippet>& after) {
  Layout out;
  out.source = "def m(self, p, q):\n";
  int line = 2;
  auto emit = [&](const Snippet& s) {
    const int first = line;
    for (const std::string& l : s.lines) {
      out.source += "    " + l + "\n";
      ++line;
    }
    return first;
  };
  for (const Snippet& s : before) out.last_before_line = emit(s);
  for (const Snippet& s : after) emit(s);
  if (before.empty() && after.empty()) emit(Simple("pass"));
  return out;
}

Edge BoundaryEdge(const ControlFlowGraph& cfg, int last_before_line) {
  if (last_before_line == 0) {
    return {cfg.entry(), cfg.Successor(cfg.entry(), EdgeTag::kFallthrough)};
  }
  for (const CfgNode& node : cfg.nodes()) {
    if (node.kind == NodeKind::kStatement &&
        node.span.start == last_before_line) {
      return {node.id, cfg.Successor(node.id, EdgeTag::kFallthrough)};
    }
  }
  throw std::logic_error("synthetic boundary statement has no node");
}

double ColumnSum(const Subgraph& g, int column) {
  double sum = 0.0;
  for (int i = 0; i < g.features.rows(); ++i) sum += g.features(i, column);
  return sum;
}

void EndWithSimple(std::vector<Snippet>& part, Rng& rng) {
  if (!part.empty() && part.back().compound) {
    part.push_back(Pick(QuietFillers(), rng));
  }
}

SyntheticItem Materialize(const std::vector<Snippet>& before,
                          const std::vector<Snippet>& after) {
  Layout layout = Render(before, after);
  python::SyntaxTree tree = python::ParseMethod(layout.source);
  ControlFlowGraph cfg = BuildCfg(tree);
  SyntheticItem item;
  item.source = layout.source;
  item.edge = BoundaryEdge(cfg, layout.last_before_line);
  item.split =
      SplitAtEdge(cfg, AnnotateUsage(cfg, ExtractInputs(tree), tree), item.edge);
  return item;
}

SyntheticItem Level1Item(Rng& rng) {
  const int label = rng.Coin() ? 1 : 0;
  std::vector<Snippet> before;
  const int fillers = rng.Range(0, 3);
  for (int i = 0; i < fillers; ++i) {
    before.push_back(Pick(rng.Coin() ? QuietFillers() : NoisyFillers(), rng));
  }
  const bool with_assign = label == 1 || rng.Coin();
  if (with_assign) {
    const int assigns = rng.Range(1, 2);
    for (int i = 0; i < assigns; ++i) before.push_back(Pick(ParamAssigns(), rng));
  }
  // Negatives holding a parameter assignment must see a predicate first;
  // negatives without one may or may not.
  if (label == 0 && (with_assign || rng.Coin())) {
    before.push_back(Pick(Predicates(), rng));
  }
  rng.Shuffle(before);
  EndWithSimple(before, rng);

  std::vector<Snippet> after;
  const int rest = rng.Range(0, 4);
  for (int i = 0; i < rest; ++i) {
    switch (rng.Below(4)) {
      case 0:
        after.push_back(Pick(QuietFillers(), rng));
        break;
      case 1:
        after.push_back(Pick(NoisyFillers(), rng));
        break;
      case 2:
        after.push_back(Pick(ParamAssigns(), rng));
        break;
      default:
        after.push_back(Pick(Predicates(), rng));
        break;
    }
  }
  if (rng.Coin(0.3)) after.push_back(Simple("return a"));

  SyntheticItem item = Materialize(before, after);
  item.split.level1 = label;
  if (PlantedLevel1(item.split) != label) {
    throw std::logic_error("synthetic level1 example violates its rule");
  }
  return item;
}

SyntheticItem Level2Item(Rng& rng) {
  std::array<int, kNumLabelClasses> labels = {};
  for (int& l : labels) l = rng.Coin() ? 1 : 0;

  std::vector<Snippet> before;
  const int fillers = rng.Range(1, 3);
  for (int i = 0; i < fillers; ++i) before.push_back(Pick(QuietFillers(), rng));
  // Signals placed before the edge must not influence the labels.
  for (int c = 1; c < kNumLabelClasses; ++c) {
    if (rng.Coin(0.15)) before.push_back(Signals()[c]);
  }
  rng.Shuffle(before);
  EndWithSimple(before, rng);

  std::vector<Snippet> after;
  for (int c = 1; c < kNumLabelClasses; ++c) {
    if (labels[c]) after.push_back(Signals()[c]);
  }
  const int extra = rng.Range(0, 2);
  for (int i = 0; i < extra; ++i) after.push_back(Pick(QuietFillers(), rng));
  rng.Shuffle(after);
  if (labels[0]) after.push_back(Signals()[0]);

  SyntheticItem item = Materialize(before, after);
  item.split.level1 = 1;
  item.split.level2 = labels;
  if (PlantedLevel2(item.split) != labels) {
    throw std::logic_error("synthetic level2 example violates its rule");
  }
  return item;
}

}  // namespace

int PlantedColumn(StatementKind label_class) {
  switch (label_class) {
    case StatementKind::kReturn:
    case StatementKind::kCall:
    case StatementKind::kBinOp:
      return UsageColumn(InputRole::kAttribute, label_class);
    default:
      return UsageColumn(InputRole::kParameter, label_class);
  }
}

int PlantedLevel1(const SplitExample& split) {
  const int assign = UsageColumn(InputRole::kParameter, StatementKind::kAssign);
  const int predicate = kNodeKindOffset + static_cast<int>(NodeKind::kPredicate);
  return ColumnSum(split.before, assign) > 0 &&
                 ColumnSum(split.before, predicate) == 0
             ? 1
             : 0;
}

std::array<int, kNumLabelClasses> PlantedLevel2(const SplitExample& split) {
  std::array<int, kNumLabelClasses> labels = {};
  for (int c = 0; c < kNumLabelClasses; ++c) {
    labels[c] = ColumnSum(split.after, PlantedColumn(kLabelClasses[c])) > 0;
  }
  return labels;
}

SplitExample SplitSource(const std::string& source, Edge edge) {
  python::SyntaxTree tree = python::ParseMethod(source);
  ControlFlowGraph cfg = BuildCfg(tree);
  return SplitAtEdge(cfg, AnnotateUsage(cfg, ExtractInputs(tree), tree), edge);
}

std::vector<SyntheticItem> GenerateSynthetic(int n, std::uint64_t seed,
                                             Task task) {
  Rng rng(seed);
  std::vector<SyntheticItem> items;
  items.reserve(n);
  for (int i = 0; i < n; ++i) {
    items.push_back(task == Task::kLevel1 ? Level1Item(rng) : Level2Item(rng));
  }
  return items;
}

}  // namespace codesoph
