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


#ifndef CODESOPH_EVALUATION_H_
#define CODESOPH_EVALUATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "codesoph/gcn.h"
#include "codesoph/metrics.h"

namespace codesoph {

struct CrossValidationConfig {
  int k = 5;
  Hyperparams hyper;
  bool stratified = false;
  bool grouped = false;  // keep each repository inside one fold
  int threads = 1;
};

struct FoldResult {
  int fold = 0;
  int train_size = 0;
  int test_size = 0;
  bool failed = false;
  std::string error;
  double final_loss = 0.0;
  std::optional<BinaryMetrics> binary;
  std::optional<MultilabelMetrics> multilabel;
};

struct EvaluationReport {
  Task task = Task::kLevel1;
  int k = 0;
  std::uint64_t seed = 0;
  int num_examples = 0;
  std::vector<FoldResult> folds;
  std::map<std::string, double> means;
  // Level 2 only: "auc.Return", "f1.Assign", ... averaged over folds.
  std::map<std::string, double> class_means;
  std::map<std::string, double> reference;
  std::vector<std::string> warnings;
};

// Reference means for the task, reported next to the measured ones.
std::map<std::string, double> ReferenceValues(Task task);

// Trains on k-1 folds and scores the held-out one, k times. `groups` names
// the repository of each example (used only when config.grouped).
EvaluationReport CrossValidate(const std::vector<Example>& data,
                               const std::vector<std::string>& groups,
                               Task task, const CrossValidationConfig& config,
                               std::uint64_t seed);

}  // namespace codesoph

#endif  // CODESOPH_EVALUATION_H_
