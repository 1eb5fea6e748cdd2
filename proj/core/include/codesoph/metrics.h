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


#ifndef CODESOPH_METRICS_H_
#define CODESOPH_METRICS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace codesoph {

struct Confusion {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;
};

Confusion Confuse(const std::vector<double>& scores,
                  const std::vector<int>& labels, double threshold);

// Undefined values are empty rather than zero.
struct BinaryMetrics {
  double accuracy = 0.0;
  std::optional<double> precision;  // no predicted positives
  std::optional<double> recall;     // no actual positives
  std::optional<double> f1;         // 0 when precision is undefined
  std::optional<double> auc;        // single-class labels
};

std::optional<double> F1Score(std::optional<double> precision,
                              std::optional<double> recall);

BinaryMetrics ComputeBinaryMetrics(const std::vector<double>& scores,
                                   const std::vector<int>& labels,
                                   double threshold = 0.5);

// Mann-Whitney rank form of the AUC with ties counted one half.
std::optional<double> RankAuc(const std::vector<double>& scores,
                              const std::vector<int>& labels);

struct MultilabelMetrics {
  std::optional<double> auc_macro;  // over classes with a defined AUC
  double f1_macro = 0.0;            // undefined per-class F1 counts as 0
  double f1_micro = 0.0;
  double hamming_loss = 0.0;
  std::vector<std::optional<double>> class_auc;
  std::vector<std::optional<double>> class_f1;
  std::vector<int> classes_without_auc;
};

// scores and labels are n x c, row-major per example.
MultilabelMetrics ComputeMultilabelMetrics(
    const std::vector<std::vector<double>>& scores,
    const std::vector<std::vector<int>>& labels, double threshold = 0.5);

struct FoldPlan {
  int k = 5;
  std::uint64_t seed = 0;
  std::vector<int> assignment;  // example index -> fold id

  std::vector<int> Fold(int fold) const;        // held-out indices
  std::vector<int> Complement(int fold) const;  // training indices
};

// Seeded shuffle, then round-robin. Throws DataError when n < k or k < 2.
FoldPlan MakeFolds(int n, int k, std::uint64_t seed);

// Round-robin within each label group so every fold sees both classes.
FoldPlan MakeStratifiedFolds(const std::vector<int>& labels, int k,
                             std::uint64_t seed);

// Whole groups go to one fold (largest first into the smallest fold); fold
// sizes then differ by more than one in general.
FoldPlan MakeGroupedFolds(const std::vector<std::string>& groups, int k,
                          std::uint64_t seed);

}  // namespace codesoph

#endif  // CODESOPH_METRICS_H_
