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

#include "codesoph/pipeline.h"

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include "codesoph/errors.h"
#include "codesoph/labeling.h"
#include "codesoph/python_parser.h"
#include "json_codec.h"

namespace codesoph {

using json_codec::Get;
using json_codec::Json;

namespace fs = std::filesystem;

namespace {

void CheckKeys(const Json& j, const std::set<std::string>& allowed,
               const std::string& where) {
  if (!j.is_object()) throw DataError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw DataError("unknown key '" + key + "' in " + where);
    }
  }
}

Hyperparams HyperFromJson(const Json& j, const std::string& where) {
  CheckKeys(j, {"hidden", "learning_rate", "epochs", "l2_weight"}, where);
  Hyperparams h;
  h.hidden = j.value("hidden", h.hidden);
  h.learning_rate = j.value("learning_rate", h.learning_rate);
  h.epochs = j.value("epochs", h.epochs);
  h.l2_weight = j.value("l2_weight", h.l2_weight);
  if (h.hidden <= 0 || h.epochs < 0 || !(h.learning_rate > 0) ||
      h.l2_weight < 0) {
    throw DataError("invalid hyperparameters in " + where);
  }
  return h;
}

std::string OutPath(const PipelineConfig& config, const std::string& name) {
  fs::create_directories(config.output_dir);
  return (fs::path(config.output_dir) / name).string();
}

std::string Lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

Json CountsJson(const std::map<std::string, int>& counts) {
  Json j = Json::object();
  for (const auto& [k, v] : counts) j[k] = v;
  return j;
}

std::string Dump(const Json& j) {
  return j.dump(1, ' ', false, Json::error_handler_t::replace) + "\n";
}

}  // namespace

std::uint64_t PipelineConfig::RequireSeed() const {
  if (!seed) throw DataError("no seed configured; pass --seed or set \"seed\"");
  return *seed;
}

PipelineConfig ConfigFromJson(std::string_view text,
                              const std::string& base_dir) {
  Json j = json_codec::Parse(text, "config");
  CheckKeys(j, {"seed", "repos", "miner", "model", "folds", "output_dir",
                "top_k"},
            "config");
  PipelineConfig c;
  try {
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output_dir")) {
      fs::path out = j["output_dir"].get<std::string>();
      c.output_dir = (out.is_absolute() ? out : fs::path(base_dir) / out)
                         .lexically_normal()
                         .string();
    }
    c.top_k = j.value("top_k", c.top_k);
    std::set<std::string> names;
    for (const Json& r : j.value("repos", Json::array())) {
      CheckKeys(r, {"path", "name", "revision_range"}, "repos entry");
      RepoSource repo;
      fs::path path = Get<std::string>(r, "path");
      repo.path = (path.is_absolute() ? path : fs::path(base_dir) / path)
                      .lexically_normal()
                      .string();
      repo.name = r.value("name", fs::path(repo.path).filename().string());
      if (repo.name.empty() || !names.insert(repo.name).second) {
        throw DataError("repository names must be non-empty and unique: '" +
                        repo.name + "'");
      }
      if (r.contains("revision_range")) {
        repo.revision_range = r["revision_range"].get<std::string>();
      }
      c.repos.push_back(std::move(repo));
    }
    if (j.contains("miner")) {
      const Json& m = j["miner"];
      CheckKeys(m, {"max_files", "max_method_lines"}, "miner");
      c.miner.max_files = m.value("max_files", c.miner.max_files);
      c.miner.max_method_lines =
          m.value("max_method_lines", c.miner.max_method_lines);
    }
    if (j.contains("model")) {
      const Json& m = j["model"];
      CheckKeys(m, {"level1", "level2"}, "model");
      if (m.contains("level1")) c.level1 = HyperFromJson(m["level1"], "level1");
      if (m.contains("level2")) c.level2 = HyperFromJson(m["level2"], "level2");
    }
    if (j.contains("folds")) {
      const Json& f = j["folds"];
      CheckKeys(f, {"k", "stratified", "grouped", "threads"}, "folds");
      c.folds.k = f.value("k", c.folds.k);
      c.folds.stratified = f.value("stratified", c.folds.stratified);
      c.folds.grouped = f.value("grouped", c.folds.grouped);
      c.folds.threads = f.value("threads", c.folds.threads);
    }
  } catch (const Json::exception& e) {
    throw DataError(std::string("invalid config: ") + e.what());
  }
  if (c.top_k < 1) throw DataError("top_k must be positive");
  return c;
}

PipelineConfig LoadConfig(const std::string& path) {
  return ConfigFromJson(ReadFile(path),
                        fs::absolute(path).parent_path().string());
}

MineSummary RunMine(const PipelineConfig& config, std::ostream& log) {
  if (config.repos.empty()) throw DataError("no repositories");
  const std::uint64_t seed = config.RequireSeed();
  std::vector<MethodChangeRecord> records;
  std::vector<std::string> audit;
  MineSummary summary;
  auto count_drop = [&](const std::string& repo, const std::string& reason,
                        int n) {
    if (n == 0) return;
    summary.drops[reason] += n;
    audit.push_back(
        Json({{"repo", repo}, {"drop_reason", reason}, {"count", n}}).dump());
  };
  for (const RepoSource& repo : config.repos) {
    RepositoryScanner scanner(repo, config.miner);
    ClassifyStats stats;
    int before = static_cast<int>(records.size());
    while (std::optional<CommitDiff> diff = scanner.Next()) {
      for (MethodChangeRecord& r : ClassifyCommit(*diff, config.miner, &stats)) {
        records.push_back(std::move(r));
      }
    }
    const ScanStats& scan = scanner.stats();
    log << repo.name << ": " << scan.commits_seen << " commits, "
        << scan.commits_yielded << " with .py changes, "
        << records.size() - before << " records\n";
    count_drop(repo.name, "MAX_FILES", scan.skipped_max_files);
    count_drop(repo.name, "UNPARSEABLE_COMMIT", scan.skipped_unparseable);
    count_drop(repo.name, "UNPARSEABLE_FILE", stats.files_unparseable);
    count_drop(repo.name, "NEW_METHOD", stats.methods_new);
    count_drop(repo.name, "COMMENT_ONLY", stats.methods_unchanged_code);
    count_drop(repo.name, "NO_ADDED_LINES", stats.methods_no_added_lines);
    count_drop(repo.name, "TOO_LONG", stats.methods_too_long);
  }
  BalanceStats balance;
  std::vector<MethodChangeRecord> kept =
      DedupeAndBalance(std::move(records), seed, &balance);
  for (const RecordKey& k : balance.dropped_duplicates) {
    audit.push_back(Json({{"record_key", json_codec::KeyToJson(k)},
                           {"drop_reason", "DUPLICATE"}})
                        .dump(-1, ' ', false, Json::error_handler_t::replace));
  }
  for (const RecordKey& k : balance.dropped_negatives) {
    audit.push_back(Json({{"record_key", json_codec::KeyToJson(k)},
                           {"drop_reason", "DOWNSAMPLED"}})
                        .dump(-1, ' ', false, Json::error_handler_t::replace));
  }
  summary.drops["DUPLICATE"] += balance.duplicates_removed;
  summary.drops["DOWNSAMPLED"] += balance.negatives_downsampled;
  std::vector<std::string> lines;
  for (const MethodChangeRecord& r : kept) {
    (r.polarity == Polarity::kPathAdding ? summary.positives
                                         : summary.negatives)++;
    lines.push_back(RecordToJson(r));
  }
  WriteFileAtomic(OutPath(config, "records.jsonl"), Lines(lines));
  WriteFileAtomic(OutPath(config, "mine_audit.jsonl"), Lines(audit));
  Json js = {{"schema_version", kSchemaVersion},
             {"positives", summary.positives},
             {"negatives", summary.negatives},
             {"drops", CountsJson(summary.drops)}};
  WriteFileAtomic(OutPath(config, "mine_summary.json"), Dump(js));
  log << "positives " << summary.positives << ", negatives "
      << summary.negatives << "\n";
  for (const auto& [reason, n] : summary.drops) {
    if (n > 0) log << "dropped " << reason << ": " << n << "\n";
  }
  return summary;
}

BuildSummary RunBuildDataset(const std::string& records_path,
                             const PipelineConfig& config, std::ostream& log) {
  BuildSummary summary;
  std::vector<std::string> rows;
  std::vector<std::string> audit;
  for (const std::string& line : ReadJsonLines(records_path)) {
    MethodChangeRecord record = RecordFromJson(line);
    ++summary.records_in;
    LabelingResult labeled = LabelRecord(record);
    if (labeled.isomorphic) {
      ++summary.round_trip_checked;
      if (*labeled.isomorphic) ++summary.round_trip_isomorphic;
    }
    for (const LabeledExample& ex : labeled.examples) {
      DatasetRow row;
      row.key = ex.key;
      row.block_index = ex.block_index;
      row.cfg = ex.cfg;
      row.candidate_edge = ex.candidate_edge;
      row.is_extension_point = ex.is_extension_point;
      row.labels = ex.labels;
      row.inputs = ExtractInputs(*ex.before_tree);
      Matrix features = AnnotateUsage(ex.cfg, row.inputs, *ex.tree);
      row.split = SplitAtEdge(ex.cfg, features, ex.candidate_edge);
      row.split.level1 = ex.is_extension_point ? 1 : 0;
      row.split.level2 = LabelVector(ex.labels);
      rows.push_back(DatasetRowToJson(row));
      ++summary.rows_out;
      ++(ex.is_extension_point ? summary.positive_rows : summary.negative_rows);
    }
    for (const DroppedExample& d : labeled.drops) {
      audit.push_back(DropToJson(d));
      ++summary.drops;
      ++summary.drops_by_reason[std::string(Name(d.reason))];
    }
    if (!labeled.examples.empty() || !labeled.drops.empty()) {
      ++summary.records_accounted;
    }
  }
  WriteFileAtomic(OutPath(config, "dataset.jsonl"), Lines(rows));
  WriteFileAtomic(OutPath(config, "dataset_audit.jsonl"), Lines(audit));
  WriteFileAtomic(OutPath(config, "feature_schema.json"), FeatureSchemaJson());
  Json js = {{"schema_version", kSchemaVersion},
             {"records_in", summary.records_in},
             {"records_accounted", summary.records_accounted},
             {"rows_out", summary.rows_out},
             {"positive_rows", summary.positive_rows},
             {"negative_rows", summary.negative_rows},
             {"drops", summary.drops},
             {"drops_by_reason", CountsJson(summary.drops_by_reason)},
             {"round_trip_checked", summary.round_trip_checked},
             {"round_trip_isomorphic", summary.round_trip_isomorphic}};
  WriteFileAtomic(OutPath(config, "dataset_summary.json"), Dump(js));
  log << summary.records_in << " records -> " << summary.rows_out
      << " rows (" << summary.positive_rows << " positive, "
      << summary.negative_rows << " negative), " << summary.drops
      << " dropped\n";
  for (const auto& [reason, n] : summary.drops_by_reason) {
    log << "dropped " << reason << ": " << n << "\n";
  }
  return summary;
}

std::vector<DatasetRow> LoadDataset(const std::string& path, Task task) {
  std::vector<DatasetRow> rows;
  for (const std::string& line : ReadJsonLines(path)) {
    DatasetRow row = DatasetRowFromJson(line);
    if (task == Task::kLevel2 && !row.is_extension_point) continue;
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw DataError("dataset " + path + " has no rows for " +
                    std::string(Name(task)));
  }
  return rows;
}

namespace {

std::vector<Example> Examples(const std::vector<DatasetRow>& rows, Task task) {
  std::vector<Example> out;
  out.reserve(rows.size());
  for (const DatasetRow& r : rows) out.push_back(PrepareExample(r.split, task));
  return out;
}

}  // namespace

TrainLog RunTrain(const std::string& dataset_path, Task task,
                  const PipelineConfig& config, std::ostream& log) {
  const std::uint64_t seed = config.RequireSeed();
  std::vector<Example> data = Examples(LoadDataset(dataset_path, task), task);
  TrainLog train_log;
  GcnModel model = Train(data, task, config.hyper(task), seed, &train_log);
  const std::string name(Name(task));
  WriteFileAtomic(OutPath(config, "model_" + name + ".json"), ModelToJson(model));
  WriteFileAtomic(OutPath(config, "trainlog_" + name + ".json"),
                  TrainLogToJson(train_log, task));
  log << name << ": trained on " << data.size() << " examples, loss "
      << (train_log.losses.empty() ? 0.0 : train_log.losses.front()) << " -> "
      << (train_log.losses.empty() ? 0.0 : train_log.losses.back()) << "\n";
  return train_log;
}

EvaluationReport RunEvaluate(const std::string& dataset_path, Task task,
                             const PipelineConfig& config, std::ostream& log) {
  const std::uint64_t seed = config.RequireSeed();
  std::vector<DatasetRow> rows = LoadDataset(dataset_path, task);
  std::vector<std::string> groups;
  for (const DatasetRow& r : rows) groups.push_back(r.key.repo);
  CrossValidationConfig cv = config.folds;
  cv.hyper = config.hyper(task);
  EvaluationReport report =
      CrossValidate(Examples(rows, task), groups, task, cv, seed);
  const std::string name(Name(task));
  WriteFileAtomic(OutPath(config, "report_" + name + ".json"),
                  ReportToJson(report));
  log << name << ": " << report.k << "-fold cross validation on "
      << report.num_examples << " examples\n";
  for (const auto& [metric, value] : report.means) {
    log << "  " << metric << " " << value << "\n";
  }
  for (const std::string& w : report.warnings) log << "warning: " << w << "\n";
  return report;
}

Recommendation Recommend(std::string_view module_source,
                         const std::string& method_name,
                         const GcnModel& level1, const GcnModel* level2,
                         int top_k) {
  if (level1.task != Task::kLevel1) {
    throw DataError("the level1 model file holds a " +
                    std::string(Name(level1.task)) + " model");
  }
  if (level2 != nullptr && level2->task != Task::kLevel2) {
    throw DataError("the level2 model file holds a " +
                    std::string(Name(level2->task)) + " model");
  }
  std::vector<MethodSource> methods = ExtractMethods(module_source);
  auto it = std::find_if(methods.begin(), methods.end(),
                         [&](const MethodSource& m) {
                           return m.qualified_name == method_name;
                         });
  if (it == methods.end()) throw DataError("no method named " + method_name);
  python::SyntaxTree tree;
  try {
    tree = python::ParseMethod(it->text);
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line() + it->start_line - 1, e.column());
  }
  ControlFlowGraph cfg = BuildCfg(tree);
  InputSet inputs = ExtractInputs(tree);
  Matrix features = AnnotateUsage(cfg, inputs, tree);
  const int offset = it->start_line - 1;
  auto file_span = [&](int id) -> std::optional<LineSpan> {
    const CfgNode& n = cfg.node(id);
    if (!n.stmt_kind) return std::nullopt;
    return LineSpan{n.span.start + offset, n.span.end + offset};
  };

  Recommendation rec;
  rec.method_name = method_name;
  std::vector<Example> examples;
  for (const CfgEdge& e : cfg.edges()) {
    RankedEdge r;
    r.edge = {e.src, e.dst};
    r.src_span = file_span(e.src);
    r.dst_span = file_span(e.dst);
    examples.push_back(
        PrepareExample(SplitAtEdge(cfg, features, r.edge), Task::kLevel1));
    r.score = Predict(level1, examples.back())[0];
    rec.ranked_edges.push_back(std::move(r));
  }
  std::vector<int> order(rec.ranked_edges.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const RankedEdge& x = rec.ranked_edges[a];
    const RankedEdge& y = rec.ranked_edges[b];
    if (x.score != y.score) return x.score > y.score;
    return x.edge < y.edge;
  });
  std::vector<RankedEdge> ranked;
  for (int i : order) {
    RankedEdge r = rec.ranked_edges[i];
    if (level2 != nullptr && static_cast<int>(ranked.size()) < top_k) {
      r.level2 = Predict(*level2, examples[i]);
      for (int c = 0; c < kNumLabelClasses; ++c) {
        if (r.level2[c] >= 0.5) r.level2_labels.Insert(kLabelClasses[c]);
      }
    }
    ranked.push_back(std::move(r));
  }
  rec.ranked_edges = std::move(ranked);
  return rec;
}

std::string RecommendationToJson(const Recommendation& rec) {
  auto span = [](const std::optional<LineSpan>& s) {
    return s ? Json({s->start, s->end}) : Json(nullptr);
  };
  Json edges = Json::array();
  for (const RankedEdge& r : rec.ranked_edges) {
    Json e = {{"edge", {r.edge.first, r.edge.second}},
              {"source_span", {span(r.src_span), span(r.dst_span)}},
              {"score", r.score}};
    if (!r.level2.empty()) {
      Json probs = Json::object();
      Json labels = Json::array();
      for (int c = 0; c < kNumLabelClasses; ++c) {
        std::string name(Name(kLabelClasses[c]));
        probs[name] = r.level2[c];
        if (r.level2_labels.Contains(kLabelClasses[c])) labels.push_back(name);
      }
      e["level2"] = {{"probabilities", std::move(probs)},
                     {"labels", std::move(labels)}};
    }
    edges.push_back(std::move(e));
  }
  Json j = {{"schema_version", kSchemaVersion},
            {"method_name", rec.method_name},
            {"ranked_edges", std::move(edges)}};
  return Dump(j);
}

}  // namespace codesoph
