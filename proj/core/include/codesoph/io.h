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


#ifndef CODESOPH_IO_H_
#define CODESOPH_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "codesoph/cfg.h"
#include "codesoph/evaluation.h"
#include "codesoph/features.h"
#include "codesoph/gcn.h"
#include "codesoph/labeling.h"
#include "codesoph/miner.h"

namespace codesoph {

inline constexpr int kSchemaVersion = 1;

// Throws DataError when the file cannot be read.
std::string ReadFile(const std::string& path);
// Non-empty lines of a JSON Lines file.
std::vector<std::string> ReadJsonLines(const std::string& path);
// Writes to a sibling temporary file, then renames it over `path`.
void WriteFileAtomic(const std::string& path, std::string_view content);

// Single-line JSON encodings; parsers throw DataError on malformed input.
std::string RecordToJson(const MethodChangeRecord& record);
MethodChangeRecord RecordFromJson(std::string_view line);

std::string CfgToJson(const ControlFlowGraph& cfg);
ControlFlowGraph CfgFromJson(std::string_view text);

// One row of dataset.jsonl.
struct DatasetRow {
  RecordKey key;
  int block_index = 0;
  ControlFlowGraph cfg;
  Edge candidate_edge;
  bool is_extension_point = false;
  KindSet labels;
  InputSet inputs;
  SplitExample split;
};

std::string DatasetRowToJson(const DatasetRow& row);
DatasetRow DatasetRowFromJson(std::string_view line);

std::string DropToJson(const DroppedExample& drop);
DroppedExample DropFromJson(std::string_view line);

// Multi-line documents.
std::string ModelToJson(const GcnModel& model);
GcnModel ModelFromJson(std::string_view text);  // validates shapes
std::string TrainLogToJson(const TrainLog& log, Task task);
std::string ReportToJson(const EvaluationReport& report);
std::string FeatureSchemaJson();

}  // namespace codesoph

#endif  // CODESOPH_IO_H_
