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

#include "codesoph/evaluation.h"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>
#include <thread>

#include "codesoph/errors.h"
#include "codesoph/rng.h"

namespace codesoph {

std::map<std::string, double> ReferenceValues(Task task) {
  if (task == Task::kLevel1) {
    return {{"accuracy", 0.730},
            {"precision", 0.727},
            {"recall", 0.717},
            {"f1", 0.721},
            {"auc", 0.817}};
  }
  return {{"auc_macro", 0.750},
          {"f1_macro", 0.358},
          {"f1_micro", 0.397},
          {"hamming_loss", 0.237}};
}

namespace {

FoldResult RunFold(const std::vector<Example>& data, const FoldPlan& plan,
                   int fold, Task task, const CrossValidationConfig& config,
                   std::uint64_t seed) {
  FoldResult r;
  r.fold = fold;
  std::vector<int> test = plan.Fold(fold);
  std::vector<int> train = plan.Complement(fold);
  std::set<int> test_set(test.begin(), test.end());
  for (int i : train) {
    if (test_set.count(i)) {
      throw std::logic_error("fold " + std::to_string(fold) +
                             " leaks example " + std::to_string(i));
    }
  }
  r.train_size = static_cast<int>(train.size());
  r.test_size = static_cast<int>(test.size());
  std::vector<Example> train_data;
  train_data.reserve(train.size());
  for (int i : train) train_data.push_back(data[i]);
  try {
    TrainLog log;
    GcnModel model =
        Train(train_data, task, config.hyper, DeriveSeed(seed, fold), &log);
    r.final_loss = log.losses.empty() ? 0.0 : log.losses.back();
    if (task == Task::kLevel1) {
      std::vector<double> scores;
      std::vector<int> labels;
      for (int i : test) {
        scores.push_back(Predict(model, data[i])[0]);
        labels.push_back(static_cast<int>(data[i].target[0]));
      }
      r.binary = ComputeBinaryMetrics(scores, labels);
    } else {
      std::vector<std::vector<double>> scores;
      std::vector<std::vector<int>> labels;
      for (int i : test) {
        scores.push_back(Predict(model, data[i]));
        labels.emplace_back(data[i].target.begin(), data[i].target.end());
      }
      r.multilabel = ComputeMultilabelMetrics(scores, labels);
    }
  } catch (const DivergenceError& e) {
    r.failed = true;
    r.error = std::string(e.what()) + " at epoch " + std::to_string(e.epoch());
  }
  return r;
}

class MeanAccumulator {
 public:
  void Add(const std::string& name, std::optional<double> value) {
    auto& [sum, count] = acc_[name];
    if (value) {
      sum += *value;
      ++count;
    }
    seen_[name] += 1;
  }
  void Finish(std::map<std::string, double>& out,
              std::vector<std::string>& warnings, const std::string& prefix) {
    for (const auto& [name, sc] : acc_) {
      const auto& [sum, count] = sc;
      if (count == 0) {
        warnings.push_back(prefix + name + " undefined in every fold");
        continue;
      }
      if (count < seen_[name]) {
        warnings.push_back(prefix + name + " averaged over " +
                           std::to_string(count) + " of " +
                           std::to_string(seen_[name]) + " folds");
      }
      out[name] = sum / count;
    }
  }

 private:
  std::map<std::string, std::pair<double, int>> acc_;
  std::map<std::string, int> seen_;
};

}  // namespace

EvaluationReport CrossValidate(const std::vector<Example>& data,
                               const std::vector<std::string>& groups,
                               Task task, const CrossValidationConfig& config,
                               std::uint64_t seed) {
  const int n = static_cast<int>(data.size());
  if (n < config.k) {
    throw DataError("dataset has " + std::to_string(n) +
                    " examples, fewer than " + std::to_string(config.k) +
                    " folds");
  }
  for (const Example& ex : data) {
    if (static_cast<int>(ex.target.size()) != OutputSize(task)) {
      throw DataError("example targets do not match the task");
    }
  }
  if (task == Task::kLevel1) {
    bool pos = false;
    bool neg = false;
    for (const Example& ex : data) (ex.target[0] != 0 ? pos : neg) = true;
    if (!pos || !neg) throw DataError("level1 dataset needs both classes");
  }

  FoldPlan plan;
  if (config.grouped) {
    if (groups.size() != data.size()) {
      throw DataError("grouped folds need one group per example");
    }
    plan = MakeGroupedFolds(groups, config.k, seed);
  } else if (config.stratified && task == Task::kLevel1) {
    std::vector<int> labels;
    for (const Example& ex : data) labels.push_back(ex.target[0] != 0);
    plan = MakeStratifiedFolds(labels, config.k, seed);
  } else {
    plan = MakeFolds(n, config.k, seed);
  }

  EvaluationReport report;
  report.task = task;
  report.k = config.k;
  report.seed = seed;
  report.num_examples = n;
  report.reference = ReferenceValues(task);
  report.folds.resize(config.k);

  const int threads = std::max(1, std::min(config.threads, config.k));
  if (threads == 1) {
    for (int f = 0; f < config.k; ++f) {
      report.folds[f] = RunFold(data, plan, f, task, config, seed);
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(config.k);
    for (int t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (int f = next++; f < config.k; f = next++) {
          try {
            report.folds[f] = RunFold(data, plan, f, task, config, seed);
          } catch (...) {
            errors[f] = std::current_exception();
          }
        }
      });
    }
    for (std::thread& w : workers) w.join();
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  MeanAccumulator means;
  MeanAccumulator class_means;
  for (const FoldResult& r : report.folds) {
    if (r.failed) {
      report.warnings.push_back("fold " + std::to_string(r.fold) +
                                " failed: " + r.error);
      continue;
    }
    if (r.binary) {
      means.Add("accuracy", r.binary->accuracy);
      means.Add("precision", r.binary->precision);
      means.Add("recall", r.binary->recall);
      means.Add("f1", r.binary->f1);
      means.Add("auc", r.binary->auc);
    }
    if (r.multilabel) {
      const MultilabelMetrics& m = *r.multilabel;
      means.Add("auc_macro", m.auc_macro);
      means.Add("f1_macro", m.f1_macro);
      means.Add("f1_micro", m.f1_micro);
      means.Add("hamming_loss", m.hamming_loss);
      for (int c = 0; c < kNumLabelClasses; ++c) {
        std::string cls(Name(kLabelClasses[c]));
        class_means.Add("auc." + cls, m.class_auc[c]);
        class_means.Add("f1." + cls, m.class_f1[c].value_or(0.0));
      }
      for (int c : m.classes_without_auc) {
        report.warnings.push_back(
            "fold " + std::to_string(r.fold) + ": class " +
            std::string(Name(kLabelClasses[c])) +
            " has a single value; excluded from auc_macro");
      }
    }
  }
  means.Finish(report.means, report.warnings, "");
  class_means.Finish(report.class_means, report.warnings, "");
  return report;
}

}  // namespace codesoph
