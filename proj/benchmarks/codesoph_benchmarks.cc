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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "codesoph/cfg.h"
#include "codesoph/features.h"
#include "codesoph/gcn.h"
#include "codesoph/metrics.h"
#include "codesoph/python_parser.h"
#include "codesoph/rng.h"
#include "codesoph/synthetic.h"

namespace codesoph {
namespace {

// A method of `blocks` guarded blocks, each with a nested loop.
std::string MethodSource(int blocks) {
  std::string s = "def f(self, p, q):\n    total = 0\n";
  for (int i = 0; i < blocks; ++i) {
    s += "    if p > " + std::to_string(i) + ":\n";
    s += "        for x in q:\n";
    s += "            total += self.w[x] * p\n";
    s += "    else:\n        log(q)\n";
  }
  s += "    return total\n";
  return s;
}

void BM_ParseAndBuildCfg(benchmark::State& state) {
  const std::string src = MethodSource(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    python::SyntaxTree tree = python::ParseMethod(src);
    ControlFlowGraph cfg = BuildCfg(tree);
    benchmark::DoNotOptimize(cfg.num_edges());
  }
}
BENCHMARK(BM_ParseAndBuildCfg)->Arg(2)->Arg(8)->Arg(32);

void BM_AnnotateUsage(benchmark::State& state) {
  const std::string src = MethodSource(static_cast<int>(state.range(0)));
  python::SyntaxTree tree = python::ParseMethod(src);
  ControlFlowGraph cfg = BuildCfg(tree);
  InputSet inputs = ExtractInputs(tree);
  for (auto _ : state) {
    benchmark::DoNotOptimize(AnnotateUsage(cfg, inputs, tree));
  }
}
BENCHMARK(BM_AnnotateUsage)->Arg(8)->Arg(32);

std::vector<Example> SyntheticBatch(int n) {
  std::vector<Example> out;
  for (const SyntheticItem& item : GenerateSynthetic(n, 1, Task::kLevel1)) {
    out.push_back(PrepareExample(item.split, Task::kLevel1));
  }
  return out;
}

void BM_GcnForward(benchmark::State& state) {
  std::vector<Example> batch = SyntheticBatch(64);
  Hyperparams hyper;
  hyper.hidden = static_cast<int>(state.range(0));
  GcnModel model = GcnModel::Initialize(Task::kLevel1, hyper, 3);
  for (auto _ : state) {
    for (const Example& ex : batch) benchmark::DoNotOptimize(Logits(model, ex));
  }
  state.SetItemsProcessed(state.iterations() * batch.size());
}
BENCHMARK(BM_GcnForward)->Arg(16)->Arg(32)->Arg(64);

void BM_GcnLossAndGradients(benchmark::State& state) {
  std::vector<Example> batch = SyntheticBatch(64);
  Hyperparams hyper;
  hyper.hidden = static_cast<int>(state.range(0));
  GcnModel model = GcnModel::Initialize(Task::kLevel1, hyper, 3);
  Gradients grads;
  for (auto _ : state) {
    benchmark::DoNotOptimize(LossAndGradients(model, batch, &grads));
  }
  state.SetItemsProcessed(state.iterations() * batch.size());
}
BENCHMARK(BM_GcnLossAndGradients)->Arg(16)->Arg(32)->Arg(64);

void BM_RankAuc(benchmark::State& state) {
  Rng rng(9);
  const int n = static_cast<int>(state.range(0));
  std::vector<double> scores(n);
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) {
    scores[i] = rng.Unit();
    labels[i] = rng.Coin() ? 1 : 0;
  }
  for (auto _ : state) benchmark::DoNotOptimize(RankAuc(scores, labels));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_RankAuc)->Arg(1000)->Arg(100000);

}  // namespace
}  // namespace codesoph

BENCHMARK_MAIN();
