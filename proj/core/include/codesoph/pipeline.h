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


#ifndef CODESOPH_PIPELINE_H_
#define CODESOPH_PIPELINE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "codesoph/evaluation.h"
#include "codesoph/gcn.h"
#include "codesoph/io.h"
#include "codesoph/miner.h"

namespace codesoph {

struct PipelineConfig {
  std::vector<RepoSource> repos;
  std::optional<std::uint64_t> seed;
  MinerConfig miner;
  Hyperparams level1;
  Hyperparams level2;
  CrossValidationConfig folds;  // hyper is taken from level1/level2
  std::string output_dir = ".";
  int top_k = 3;

  const Hyperparams& hyper(Task task) const {
    return task == Task::kLevel1 ? level1 : level2;
  }
  // Throws DataError when no seed was configured.
  std::uint64_t RequireSeed() const;
};

// Relative repository paths resolve against `base_dir`.
PipelineConfig ConfigFromJson(std::string_view text,
                              const std::string& base_dir);
PipelineConfig LoadConfig(const std::string& path);

struct MineSummary {
  int positives = 0;
  int negatives = 0;
  std::map<std::string, int> drops;  // reason -> count
};

// Writes records.jsonl, mine_audit.jsonl and mine_summary.json.
MineSummary RunMine(const PipelineConfig& config, std::ostream& log);

struct BuildSummary {
  int records_in = 0;
  int rows_out = 0;
  int positive_rows = 0;
  int negative_rows = 0;
  int drops = 0;
  std::map<std::string, int> drops_by_reason;
  // Records whose every block ended up in the rows or the audit stream.
  int records_accounted = 0;
  // Positives whose pruned graph was compared with the pre-commit graph.
  int round_trip_checked = 0;
  int round_trip_isomorphic = 0;
};

// Labels and annotates every record. Writes dataset.jsonl,
// dataset_audit.jsonl, feature_schema.json and dataset_summary.json.
BuildSummary RunBuildDataset(const std::string& records_path,
                             const PipelineConfig& config, std::ostream& log);

// Rows usable for `task`: every row for level1, extension points for level2.
std::vector<DatasetRow> LoadDataset(const std::string& path, Task task);

// Writes model_<task>.json and trainlog_<task>.json. Throws
// DivergenceError.
TrainLog RunTrain(const std::string& dataset_path, Task task,
                  const PipelineConfig& config, std::ostream& log);

// Writes report_<task>.json.
EvaluationReport RunEvaluate(const std::string& dataset_path, Task task,
                             const PipelineConfig& config, std::ostream& log);

struct RankedEdge {
  Edge edge;
  std::optional<LineSpan> src_span;  // file lines; empty for Entry/Exit
  std::optional<LineSpan> dst_span;
  double score = 0.0;
  std::vector<double> level2;  // only for the top-k edges
  KindSet level2_labels;
};

struct Recommendation {
  std::string method_name;
  std::vector<RankedEdge> ranked_edges;
};

// Scores every CFG edge of `method_name` in the module source. Level 2
// probabilities are attached to the first `top_k` edges when a level2 model
// is given.
Recommendation Recommend(std::string_view module_source,
                         const std::string& method_name,
                         const GcnModel& level1, const GcnModel* level2,
                         int top_k);

std::string RecommendationToJson(const Recommendation& rec);

}  // namespace codesoph

#endif  // CODESOPH_PIPELINE_H_
