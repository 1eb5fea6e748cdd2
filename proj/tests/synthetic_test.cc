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

#include <algorithm>
#include <array>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "codesoph/cfg.h"
#include "codesoph/metrics.h"
#include "codesoph/python_parser.h"
#include "codesoph/synthetic.h"

namespace codesoph {
namespace {

// Source lines on each side of the split edge, judged by the line where the
// edge's source statement starts.
struct Sides {
  std::vector<std::string> before;
  std::vector<std::string> after;
};

Sides SplitLines(const SyntheticItem& item) {
  ControlFlowGraph cfg = BuildCfg(python::ParseMethod(item.source));
  const CfgNode& src = cfg.nodes()[item.edge.first];
  const int boundary = src.kind == NodeKind::kEntry ? 1 : src.span.start;
  Sides sides;
  std::istringstream in(item.source);
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (n == 1) continue;
    (n <= boundary ? sides.before : sides.after).push_back(line);
  }
  return sides;
}

bool Any(const std::vector<std::string>& lines, const std::regex& re) {
  for (const std::string& l : lines)
    if (std::regex_search(l, re)) return true;
  return false;
}

const std::regex kParamAssign(R"(^\s*\w+ = .*\b[pq]\b|^\s*[pq] = )");
const std::regex kPredicate(R"(^\s*(if|for|while) )");

// Level 1 label read off the text.
int TextLevel1(const SyntheticItem& item) {
  Sides s = SplitLines(item);
  return Any(s.before, kParamAssign) && !Any(s.before, kPredicate) ? 1 : 0;
}

// Level 2 labels read off the text, in kLabelClasses order.
std::array<int, kNumLabelClasses> TextLevel2(const SyntheticItem& item) {
  const std::array<std::regex, kNumLabelClasses> patterns = {
      std::regex(R"(return self\.)"),
      kParamAssign,
      std::regex(R"(\+= .*\b[pq]\b)"),
      std::regex(R"(raise [pq]\b)"),
      std::regex(R"(^\s*if [pq]\b)"),
      std::regex(R"(\w\(.*self\.)"),
      std::regex(R"(\b[pq]\[)"),
      std::regex(R"(self\.\w+ [+*-] )"),
  };
  Sides s = SplitLines(item);
  std::array<int, kNumLabelClasses> out = {};
  for (int c = 0; c < kNumLabelClasses; ++c) out[c] = Any(s.after, patterns[c]);
  return out;
}

TEST(SyntheticTest, Level1LabelsFollowTheTextRule) {
  auto items = GenerateSynthetic(300, 42, Task::kLevel1);
  ASSERT_EQ(items.size(), 300u);
  int positives = 0;
  for (const SyntheticItem& item : items) {
    EXPECT_EQ(item.split.level1, TextLevel1(item)) << item.source;
    EXPECT_EQ(item.split.level1, PlantedLevel1(item.split));
    positives += item.split.level1;
  }
  EXPECT_GE(positives, 60);
  EXPECT_LE(positives, 240);
}

TEST(SyntheticTest, Level2LabelsFollowTheTextRule) {
  auto items = GenerateSynthetic(300, 43, Task::kLevel2);
  std::array<int, kNumLabelClasses> counts = {};
  for (const SyntheticItem& item : items) {
    EXPECT_EQ(item.split.level2, TextLevel2(item)) << item.source;
    EXPECT_EQ(item.split.level2, PlantedLevel2(item.split));
    EXPECT_EQ(item.split.level1, 1);
    for (int c = 0; c < kNumLabelClasses; ++c) counts[c] += item.split.level2[c];
  }
  for (int c = 0; c < kNumLabelClasses; ++c) {
    EXPECT_GE(counts[c], 60) << c;
    EXPECT_LE(counts[c], 240) << c;
  }
}

TEST(SyntheticTest, PlantedScoreSeparatesPerfectly) {
  auto items = GenerateSynthetic(200, 7, Task::kLevel1);
  std::vector<double> scores;
  std::vector<int> labels;
  for (const SyntheticItem& item : items) {
    scores.push_back(PlantedLevel1(item.split));
    labels.push_back(item.split.level1);
  }
  EXPECT_EQ(RankAuc(scores, labels), 1.0);
}

TEST(SyntheticTest, DeterministicPerSeed) {
  auto a = GenerateSynthetic(50, 9, Task::kLevel2);
  auto b = GenerateSynthetic(50, 9, Task::kLevel2);
  auto c = GenerateSynthetic(50, 10, Task::kLevel2);
  bool differs = false;
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].source, b[i].source);
    EXPECT_EQ(a[i].edge, b[i].edge);
    EXPECT_EQ(a[i].split.before.features, b[i].split.before.features);
    differs |= a[i].source != c[i].source;
  }
  EXPECT_TRUE(differs);
}

TEST(SyntheticTest, SplitsAreReproducibleFromSource) {
  for (Task task : {Task::kLevel1, Task::kLevel2}) {
    for (const SyntheticItem& item : GenerateSynthetic(40, 3, task)) {
      SplitExample again = SplitSource(item.source, item.edge);
      EXPECT_EQ(again.before.nodes, item.split.before.nodes);
      EXPECT_EQ(again.after.nodes, item.split.after.nodes);
      EXPECT_EQ(again.before.features, item.split.before.features);
      EXPECT_EQ(again.after.features, item.split.after.features);
    }
  }
}

TEST(SyntheticTest, PlantedColumnsAreDistinct) {
  std::vector<int> cols;
  for (StatementKind k : kLabelClasses) cols.push_back(PlantedColumn(k));
  std::sort(cols.begin(), cols.end());
  EXPECT_EQ(std::unique(cols.begin(), cols.end()), cols.end());
}

}  // namespace
}  // namespace codesoph
