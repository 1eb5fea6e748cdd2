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

#include "codesoph/metrics.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "codesoph/errors.h"
#include "codesoph/rng.h"

namespace codesoph {

namespace {

std::optional<double> Ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

void CheckSizes(size_t a, size_t b) {
  if (a != b || a == 0) {
    throw DataError("scores and labels must be non-empty and equally long");
  }
}

}  // namespace

Confusion Confuse(const std::vector<double>& scores,
                  const std::vector<int>& labels, double threshold) {
  CheckSizes(scores.size(), labels.size());
  Confusion c;
  for (size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    const bool actual = labels[i] != 0;
    if (predicted && actual) ++c.tp;
    if (predicted && !actual) ++c.fp;
    if (!predicted && !actual) ++c.tn;
    if (!predicted && actual) ++c.fn;
  }
  return c;
}

std::optional<double> F1Score(std::optional<double> precision,
                              std::optional<double> recall) {
  if (!recall) return std::nullopt;
  if (!precision) return 0.0;
  const double sum = *precision + *recall;
  if (sum == 0.0) return 0.0;
  return 2.0 * *precision * *recall / sum;
}

std::optional<double> RankAuc(const std::vector<double>& scores,
                              const std::vector<int>& labels) {
  CheckSizes(scores.size(), labels.size());
  const std::int64_t n = static_cast<std::int64_t>(scores.size());
  std::vector<std::int64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    return scores[a] < scores[b];
  });
  std::int64_t positives = 0;
  // Twice the rank sum of the positives: a tie group spanning 1-based ranks
  // lo..hi gives each member the midrank (lo + hi) / 2.
  std::int64_t twice_rank_sum = 0;
  for (std::int64_t i = 0; i < n;) {
    std::int64_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const std::int64_t twice_midrank = (i + 1) + j;
    for (std::int64_t t = i; t < j; ++t) {
      if (labels[order[t]] != 0) {
        ++positives;
        twice_rank_sum += twice_midrank;
      }
    }
    i = j;
  }
  const std::int64_t negatives = n - positives;
  if (positives == 0 || negatives == 0) return std::nullopt;
  const std::int64_t twice_u = twice_rank_sum - positives * (positives + 1);
  return static_cast<double>(twice_u) /
         (2.0 * static_cast<double>(positives) * static_cast<double>(negatives));
}

BinaryMetrics ComputeBinaryMetrics(const std::vector<double>& scores,
                                   const std::vector<int>& labels,
                                   double threshold) {
  Confusion c = Confuse(scores, labels, threshold);
  BinaryMetrics m;
  m.accuracy = *Ratio(c.tp + c.tn, c.tp + c.tn + c.fp + c.fn);
  m.precision = Ratio(c.tp, c.tp + c.fp);
  m.recall = Ratio(c.tp, c.tp + c.fn);
  m.f1 = F1Score(m.precision, m.recall);
  m.auc = RankAuc(scores, labels);
  return m;
}

MultilabelMetrics ComputeMultilabelMetrics(
    const std::vector<std::vector<double>>& scores,
    const std::vector<std::vector<int>>& labels, double threshold) {
  CheckSizes(scores.size(), labels.size());
  const size_t classes = scores[0].size();
  for (size_t i = 0; i < scores.size(); ++i) {
    if (scores[i].size() != classes || labels[i].size() != classes) {
      throw DataError("score and label matrices differ in shape");
    }
  }
  MultilabelMetrics m;
  Confusion total;
  double auc_sum = 0.0;
  int auc_count = 0;
  double f1_sum = 0.0;
  for (size_t c = 0; c < classes; ++c) {
    std::vector<double> s(scores.size());
    std::vector<int> l(scores.size());
    for (size_t i = 0; i < scores.size(); ++i) {
      s[i] = scores[i][c];
      l[i] = labels[i][c];
    }
    Confusion cc = Confuse(s, l, threshold);
    total.tp += cc.tp;
    total.fp += cc.fp;
    total.tn += cc.tn;
    total.fn += cc.fn;
    std::optional<double> f1 =
        F1Score(Ratio(cc.tp, cc.tp + cc.fp), Ratio(cc.tp, cc.tp + cc.fn));
    m.class_f1.push_back(f1);
    f1_sum += f1.value_or(0.0);
    std::optional<double> auc = RankAuc(s, l);
    m.class_auc.push_back(auc);
    if (auc) {
      auc_sum += *auc;
      ++auc_count;
    } else {
      m.classes_without_auc.push_back(static_cast<int>(c));
    }
  }
  if (auc_count > 0) m.auc_macro = auc_sum / auc_count;
  m.f1_macro = f1_sum / static_cast<double>(classes);
  m.f1_micro = F1Score(Ratio(total.tp, total.tp + total.fp),
                       Ratio(total.tp, total.tp + total.fn))
                   .value_or(0.0);
  m.hamming_loss = static_cast<double>(total.fp + total.fn) /
                   static_cast<double>(scores.size() * classes);
  return m;
}

std::vector<int> FoldPlan::Fold(int fold) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(assignment.size()); ++i) {
    if (assignment[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<int> FoldPlan::Complement(int fold) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(assignment.size()); ++i) {
    if (assignment[i] != fold) out.push_back(i);
  }
  return out;
}

namespace {

void CheckFoldArgs(int n, int k) {
  if (k < 2) throw DataError("fold count must be at least 2");
  if (n < k) {
    throw DataError("cannot split " + std::to_string(n) + " examples into " +
                    std::to_string(k) + " folds");
  }
}

}  // namespace

FoldPlan MakeFolds(int n, int k, std::uint64_t seed) {
  CheckFoldArgs(n, k);
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.Shuffle(order);
  plan.assignment.assign(n, 0);
  for (int i = 0; i < n; ++i) plan.assignment[order[i]] = i % k;
  return plan;
}

FoldPlan MakeStratifiedFolds(const std::vector<int>& labels, int k,
                             std::uint64_t seed) {
  const int n = static_cast<int>(labels.size());
  CheckFoldArgs(n, k);
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.Shuffle(order);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return labels[a] < labels[b]; });
  plan.assignment.assign(n, 0);
  for (int i = 0; i < n; ++i) plan.assignment[order[i]] = i % k;
  return plan;
}

FoldPlan MakeGroupedFolds(const std::vector<std::string>& groups, int k,
                          std::uint64_t seed) {
  const int n = static_cast<int>(groups.size());
  CheckFoldArgs(n, k);
  std::map<std::string, std::vector<int>> members;
  for (int i = 0; i < n; ++i) members[groups[i]].push_back(i);
  if (static_cast<int>(members.size()) < k) {
    throw DataError("fewer groups than folds");
  }
  std::vector<const std::vector<int>*> order;
  for (const auto& [name, idx] : members) order.push_back(&idx);
  Rng rng(seed);
  rng.Shuffle(order);
  std::stable_sort(order.begin(), order.end(),
                   [](const std::vector<int>* a, const std::vector<int>* b) {
                     return a->size() > b->size();
                   });
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignment.assign(n, 0);
  std::vector<size_t> sizes(k, 0);
  for (const std::vector<int>* g : order) {
    int fold = static_cast<int>(
        std::min_element(sizes.begin(), sizes.end()) - sizes.begin());
    for (int i : *g) plan.assignment[i] = fold;
    sizes[fold] += g->size();
  }
  return plan;
}

}  // namespace codesoph
