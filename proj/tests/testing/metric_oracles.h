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

#ifndef CODESOPH_TESTS_TESTING_METRIC_ORACLES_H_
#define CODESOPH_TESTS_TESTING_METRIC_ORACLES_H_

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "codesoph/metrics.h"
#include "codesoph/rng.h"

namespace codesoph::testing {

// AUC by comparing every positive with every negative.
inline std::optional<double> BruteForceAuc(const std::vector<double>& scores,
                                           const std::vector<int>& labels) {
  std::int64_t wins = 0;
  std::int64_t ties = 0;
  std::int64_t pos = 0;
  std::int64_t neg = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (labels[i]) {
      ++pos;
    } else {
      ++neg;
    }
    if (!labels[i]) continue;
    for (size_t j = 0; j < scores.size(); ++j) {
      if (labels[j]) continue;
      if (scores[i] > scores[j]) ++wins;
      if (scores[i] == scores[j]) ++ties;
    }
  }
  if (pos == 0 || neg == 0) return std::nullopt;
  return static_cast<double>(2 * wins + ties) /
         (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
}

struct OracleCounts {
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
};

inline OracleCounts CountOutcomes(const std::vector<double>& scores,
                                  const std::vector<int>& labels,
                                  double threshold) {
  OracleCounts c;
  for (size_t i = 0; i < scores.size(); ++i) {
    const bool p = !(scores[i] < threshold);
    if (p) {
      labels[i] ? ++c.tp : ++c.fp;
    } else {
      labels[i] ? ++c.fn : ++c.tn;
    }
  }
  return c;
}

// A random instance with n <= 50 and scores on a coarse grid half the time,
// so that ties are common.
struct MetricInstance {
  std::vector<double> scores;
  std::vector<int> labels;
};

inline MetricInstance RandomMetricInstance(Rng& rng) {
  MetricInstance m;
  const int n = rng.Range(1, 50);
  const bool coarse = rng.Coin();
  const double prevalence = rng.Uniform(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    m.scores.push_back(coarse ? rng.Range(0, 4) / 4.0 : rng.Unit());
    m.labels.push_back(rng.Coin(prevalence) ? 1 : 0);
  }
  return m;
}

// Compares the binary metrics of one instance with the oracles. Returns an
// empty string on agreement. Count ratios must match bit for bit; F1 must equal
// the harmonic mean of the reported precision and recall exactly, and agree
// with the count form 2tp / (2tp + fp + fn) to rounding.
inline std::string CheckBinaryAgainstOracle(const MetricInstance& m,
                                            double threshold = 0.5) {
  std::ostringstream err;
  BinaryMetrics got = ComputeBinaryMetrics(m.scores, m.labels, threshold);
  std::optional<double> auc = BruteForceAuc(m.scores, m.labels);
  if (got.auc != auc) err << "auc ";
  OracleCounts c = CountOutcomes(m.scores, m.labels, threshold);
  const double n = static_cast<double>(m.scores.size());
  if (got.accuracy != static_cast<double>(c.tp + c.tn) / n) err << "accuracy ";
  std::optional<double> precision;
  if (c.tp + c.fp) precision = static_cast<double>(c.tp) / (c.tp + c.fp);
  std::optional<double> recall;
  if (c.tp + c.fn) recall = static_cast<double>(c.tp) / (c.tp + c.fn);
  if (got.precision != precision) err << "precision ";
  if (got.recall != recall) err << "recall ";
  if (!recall) {
    if (got.f1) err << "f1-defined ";
  } else if (!got.f1) {
    err << "f1-undefined ";
  } else if (c.tp == 0) {
    if (*got.f1 != 0.0) err << "f1-zero ";
  } else {
    const double harmonic = 2 * *precision * *recall / (*precision + *recall);
    const double counts = 2.0 * c.tp / (2.0 * c.tp + c.fp + c.fn);
    if (*got.f1 != harmonic) err << "f1-harmonic ";
    if (std::abs(*got.f1 - counts) > 4e-16) err << "f1-counts ";
  }
  return err.str();
}

inline double OracleHamming(const std::vector<std::vector<double>>& scores,
                            const std::vector<std::vector<int>>& labels,
                            double threshold) {
  std::int64_t wrong = 0;
  std::int64_t total = 0;
  for (size_t i = 0; i < scores.size(); ++i)
    for (size_t c = 0; c < scores[i].size(); ++c) {
      const int predicted = scores[i][c] >= threshold ? 1 : 0;
      wrong += predicted != (labels[i][c] ? 1 : 0);
      ++total;
    }
  return static_cast<double>(wrong) / static_cast<double>(total);
}

}  // namespace codesoph::testing

#endif  // CODESOPH_TESTS_TESTING_METRIC_ORACLES_H_
