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

#include "codesoph/io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "json_codec.h"

namespace codesoph {

namespace json_codec {

Json Parse(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DataError("malformed " + std::string(what) + ": " + e.what());
  }
}

Json KeyToJson(const RecordKey& key) {
  return {{"repo", key.repo},
          {"commit_id", key.commit_id},
          {"file_path", key.file_path},
          {"method_name", key.method_name}};
}

RecordKey KeyFromJson(const Json& j) {
  return {Get<std::string>(j, "repo"), Get<std::string>(j, "commit_id"),
          Get<std::string>(j, "file_path"), Get<std::string>(j, "method_name")};
}

}  // namespace json_codec

using json_codec::Get;
using json_codec::Json;

namespace {

// Invalid UTF-8 in mined sources is replaced rather than rejected.
std::string Dump(const Json& j, int indent = -1) {
  return j.dump(indent, ' ', false, Json::error_handler_t::replace);
}

Json MatrixToJson(const Matrix& m) {
  return {{"shape", {m.rows(), m.cols()}}, {"data", m.data()}};
}

Matrix MatrixFromJson(const Json& j) {
  std::vector<int> shape = Get<std::vector<int>>(j, "shape");
  std::vector<double> data = Get<std::vector<double>>(j, "data");
  if (shape.size() != 2 || shape[0] < 0 || shape[1] < 0 ||
      data.size() != static_cast<size_t>(shape[0]) * shape[1]) {
    throw DataError("matrix shape does not match its data");
  }
  return Matrix(shape[0], shape[1], std::move(data));
}

Json KindsToJson(KindSet kinds) {
  Json out = Json::array();
  for (int i = 0; i < kNumStatementKinds; ++i) {
    auto k = static_cast<StatementKind>(i);
    if (kinds.Contains(k)) out.push_back(std::string(Name(k)));
  }
  return out;
}

KindSet KindsFromJson(const Json& j) {
  KindSet kinds;
  for (const Json& name : j) {
    auto k = StatementKindFromName(name.get<std::string>());
    if (!k) throw DataError("unknown statement kind " + name.dump());
    kinds.Insert(*k);
  }
  return kinds;
}

Json CfgJson(const ControlFlowGraph& cfg) {
  Json nodes = Json::array();
  for (const CfgNode& n : cfg.nodes()) {
    Json node = {{"id", n.id}, {"kind", std::string(Name(n.kind))}};
    if (n.stmt_kind) {
      node["stmt_kind"] = std::string(Name(*n.stmt_kind));
      node["expr_kinds"] = KindsToJson(n.expr_kinds);
      node["span"] = {n.span.start, n.span.end};
    }
    nodes.push_back(std::move(node));
  }
  Json edges = Json::array();
  for (const CfgEdge& e : cfg.edges()) {
    edges.push_back({e.src, e.dst, std::string(Name(e.tag))});
  }
  return {{"nodes", std::move(nodes)},
          {"edges", std::move(edges)},
          {"entry", cfg.entry()},
          {"exit", cfg.exit()}};
}

ControlFlowGraph CfgFromJsonValue(const Json& j) {
  std::vector<CfgNode> nodes;
  for (const Json& jn : Get<Json>(j, "nodes")) {
    CfgNode n;
    n.id = Get<int>(jn, "id");
    auto kind = NodeKindFromName(Get<std::string>(jn, "kind"));
    if (!kind || n.id != static_cast<int>(nodes.size())) {
      throw DataError("bad cfg node " + jn.dump());
    }
    n.kind = *kind;
    if (jn.contains("stmt_kind")) {
      auto sk = StatementKindFromName(Get<std::string>(jn, "stmt_kind"));
      if (!sk) throw DataError("bad statement kind in " + jn.dump());
      n.stmt_kind = *sk;
      n.expr_kinds = KindsFromJson(Get<Json>(jn, "expr_kinds"));
      std::vector<int> span = Get<std::vector<int>>(jn, "span");
      if (span.size() != 2) throw DataError("bad span in " + jn.dump());
      n.span = {span[0], span[1]};
    }
    nodes.push_back(n);
  }
  const int count = static_cast<int>(nodes.size());
  std::vector<CfgEdge> edges;
  for (const Json& je : Get<Json>(j, "edges")) {
    if (!je.is_array() || je.size() != 3) throw DataError("bad cfg edge");
    auto tag = EdgeTagFromName(je[2].get<std::string>());
    int src = je[0].get<int>();
    int dst = je[1].get<int>();
    if (!tag || src < 0 || dst < 0 || src >= count || dst >= count) {
      throw DataError("bad cfg edge " + je.dump());
    }
    edges.push_back({src, dst, *tag});
  }
  int entry = Get<int>(j, "entry");
  int exit = Get<int>(j, "exit");
  if (entry < 0 || exit < 0 || entry >= count || exit >= count) {
    throw DataError("cfg entry/exit out of range");
  }
  return ControlFlowGraph(std::move(nodes), std::move(edges), entry, exit);
}

Json SubgraphJson(const Subgraph& g) {
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges) edges.push_back({u, v});
  return {{"nodes", g.nodes},
          {"edges", std::move(edges)},
          {"features", MatrixToJson(g.features)}};
}

Subgraph SubgraphFromJson(const Json& j) {
  Subgraph g;
  g.nodes = Get<std::vector<int>>(j, "nodes");
  const int n = static_cast<int>(g.nodes.size());
  for (const Json& e : Get<Json>(j, "edges")) {
    int u = e.at(0).get<int>();
    int v = e.at(1).get<int>();
    if (u < 0 || v < 0 || u >= n || v >= n) throw DataError("bad subgraph edge");
    g.edges.push_back({u, v});
  }
  g.features = MatrixFromJson(Get<Json>(j, "features"));
  if (g.features.rows() != n || g.features.cols() != kFeatureWidth || n == 0) {
    throw DataError("subgraph feature matrix has the wrong shape");
  }
  return g;
}

Json BinaryJson(const BinaryMetrics& m) {
  return {{"accuracy", m.accuracy},
          {"precision", json_codec::Optional(m.precision)},
          {"recall", json_codec::Optional(m.recall)},
          {"f1", json_codec::Optional(m.f1)},
          {"auc", json_codec::Optional(m.auc)}};
}

Json MultilabelJson(const MultilabelMetrics& m) {
  Json per_class = Json::object();
  for (int c = 0; c < kNumLabelClasses; ++c) {
    per_class[std::string(Name(kLabelClasses[c]))] = {
        {"auc", json_codec::Optional(m.class_auc[c])},
        {"f1", json_codec::Optional(m.class_f1[c])}};
  }
  return {{"auc_macro", json_codec::Optional(m.auc_macro)},
          {"f1_macro", m.f1_macro},
          {"f1_micro", m.f1_micro},
          {"hamming_loss", m.hamming_loss},
          {"per_class", std::move(per_class)}};
}

}  // namespace

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> ReadJsonLines(const std::string& path) {
  std::istringstream in(ReadFile(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

void WriteFileAtomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw DataError("cannot rename " + tmp + " to " + path);
  }
}

std::string RecordToJson(const MethodChangeRecord& r) {
  Json spans = Json::array();
  for (const LineSpan& s : r.added_line_spans) spans.push_back({s.start, s.end});
  Json j = {{"repo", r.repo},
            {"commit_id", r.commit_id},
            {"file_path", r.file_path},
            {"method_name", r.method_name},
            {"before_source", r.before_source},
            {"after_source", r.after_source},
            {"polarity", std::string(Name(r.polarity))},
            {"added_line_spans", std::move(spans)}};
  return Dump(j);
}

MethodChangeRecord RecordFromJson(std::string_view line) {
  Json j = json_codec::Parse(line, "record");
  MethodChangeRecord r;
  r.repo = Get<std::string>(j, "repo");
  r.commit_id = Get<std::string>(j, "commit_id");
  r.file_path = Get<std::string>(j, "file_path");
  r.method_name = Get<std::string>(j, "method_name");
  r.before_source = Get<std::string>(j, "before_source");
  r.after_source = Get<std::string>(j, "after_source");
  auto polarity = PolarityFromName(Get<std::string>(j, "polarity"));
  if (!polarity) throw DataError("unknown polarity in record");
  r.polarity = *polarity;
  for (const Json& s : Get<Json>(j, "added_line_spans")) {
    if (!s.is_array() || s.size() != 2) throw DataError("bad added line span");
    r.added_line_spans.push_back({s[0].get<int>(), s[1].get<int>()});
  }
  return r;
}

std::string CfgToJson(const ControlFlowGraph& cfg) { return Dump(CfgJson(cfg)); }

ControlFlowGraph CfgFromJson(std::string_view text) {
  return CfgFromJsonValue(json_codec::Parse(text, "cfg"));
}

std::string DatasetRowToJson(const DatasetRow& row) {
  Json labels = Json::array();
  for (StatementKind k : kLabelClasses) {
    if (row.labels.Contains(k)) labels.push_back(std::string(Name(k)));
  }
  Json j = {
      {"record_key", json_codec::KeyToJson(row.key)},
      {"block_index", row.block_index},
      {"cfg", CfgJson(row.cfg)},
      {"candidate_edge", {row.candidate_edge.first, row.candidate_edge.second}},
      {"is_extension_point", row.is_extension_point},
      {"labels", std::move(labels)},
      {"inputs",
       {{"parameters", row.inputs.parameters},
        {"attributes", row.inputs.attributes}}},
      {"split",
       {{"before", SubgraphJson(row.split.before)},
        {"after", SubgraphJson(row.split.after)}}},
  };
  return Dump(j);
}

DatasetRow DatasetRowFromJson(std::string_view line) {
  Json j = json_codec::Parse(line, "dataset row");
  DatasetRow row;
  try {
    row.key = json_codec::KeyFromJson(Get<Json>(j, "record_key"));
    row.block_index = Get<int>(j, "block_index");
    row.cfg = CfgFromJsonValue(Get<Json>(j, "cfg"));
    std::vector<int> edge = Get<std::vector<int>>(j, "candidate_edge");
    if (edge.size() != 2 || !row.cfg.HasEdge(edge[0], edge[1])) {
      throw DataError("candidate edge is not an edge of the cfg");
    }
    row.candidate_edge = {edge[0], edge[1]};
    row.is_extension_point = Get<bool>(j, "is_extension_point");
    row.labels = KindsFromJson(Get<Json>(j, "labels")).LabelClassesOnly();
    const Json& inputs = Get<Json>(j, "inputs");
    row.inputs.parameters = Get<std::vector<std::string>>(inputs, "parameters");
    row.inputs.attributes = Get<std::vector<std::string>>(inputs, "attributes");
    const Json& split = Get<Json>(j, "split");
    row.split.before = SubgraphFromJson(Get<Json>(split, "before"));
    row.split.after = SubgraphFromJson(Get<Json>(split, "after"));
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed dataset row: ") + e.what());
  }
  row.split.level1 = row.is_extension_point ? 1 : 0;
  row.split.level2 = LabelVector(row.labels);
  return row;
}

std::string DropToJson(const DroppedExample& drop) {
  Json j = {{"record_key", json_codec::KeyToJson(drop.key)},
            {"block_index", drop.block_index},
            {"drop_reason", std::string(Name(drop.reason))},
            {"detail", drop.detail}};
  return Dump(j);
}

DroppedExample DropFromJson(std::string_view line) {
  Json j = json_codec::Parse(line, "audit row");
  DroppedExample d;
  d.key = json_codec::KeyFromJson(Get<Json>(j, "record_key"));
  d.block_index = Get<int>(j, "block_index");
  auto reason = DropReasonFromName(Get<std::string>(j, "drop_reason"));
  if (!reason) throw DataError("unknown drop reason");
  d.reason = *reason;
  d.detail = Get<std::string>(j, "detail");
  return d;
}

std::string ModelToJson(const GcnModel& m) {
  Json j = {{"schema_version", kSchemaVersion},
            {"task", std::string(Name(m.task))},
            {"h", m.hidden()},
            {"seed", m.seed},
            {"hyperparams",
             {{"learning_rate", m.hyper.learning_rate},
              {"epochs", m.hyper.epochs},
              {"l2_weight", m.hyper.l2_weight}}},
            {"matrices",
             {{"w1", MatrixToJson(m.w1)},
              {"w2", MatrixToJson(m.w2)},
              {"head_w", MatrixToJson(m.head_w)},
              {"head_b", MatrixToJson(m.head_b)}}}};
  return Dump(j, 1) + "\n";
}

GcnModel ModelFromJson(std::string_view text) {
  Json j = json_codec::Parse(text, "model");
  if (Get<int>(j, "schema_version") != kSchemaVersion) {
    throw DataError("unsupported model schema version");
  }
  GcnModel m;
  auto task = TaskFromName(Get<std::string>(j, "task"));
  if (!task) throw DataError("unknown model task");
  m.task = *task;
  m.seed = Get<std::uint64_t>(j, "seed");
  const Json& hp = Get<Json>(j, "hyperparams");
  m.hyper.hidden = Get<int>(j, "h");
  m.hyper.learning_rate = Get<double>(hp, "learning_rate");
  m.hyper.epochs = Get<int>(hp, "epochs");
  m.hyper.l2_weight = Get<double>(hp, "l2_weight");
  const Json& mats = Get<Json>(j, "matrices");
  m.w1 = MatrixFromJson(Get<Json>(mats, "w1"));
  m.w2 = MatrixFromJson(Get<Json>(mats, "w2"));
  m.head_w = MatrixFromJson(Get<Json>(mats, "head_w"));
  m.head_b = MatrixFromJson(Get<Json>(mats, "head_b"));
  std::string problem = m.Validate();
  if (!problem.empty()) throw DataError("invalid model: " + problem);
  return m;
}

std::string TrainLogToJson(const TrainLog& log, Task task) {
  Json j = {{"schema_version", kSchemaVersion},
            {"task", std::string(Name(task))},
            {"final_epoch", log.final_epoch},
            {"losses", log.losses}};
  return Dump(j, 1) + "\n";
}

std::string ReportToJson(const EvaluationReport& r) {
  Json folds = Json::array();
  for (const FoldResult& f : r.folds) {
    Json jf = {{"fold", f.fold},
               {"train_size", f.train_size},
               {"test_size", f.test_size},
               {"failed", f.failed},
               {"final_loss", f.final_loss}};
    if (f.failed) jf["error"] = f.error;
    if (f.binary) jf["metrics"] = BinaryJson(*f.binary);
    if (f.multilabel) jf["metrics"] = MultilabelJson(*f.multilabel);
    folds.push_back(std::move(jf));
  }
  Json j = {{"schema_version", kSchemaVersion},
            {"task", std::string(Name(r.task))},
            {"k", r.k},
            {"seed", r.seed},
            {"num_examples", r.num_examples},
            {"per_fold", std::move(folds)},
            {"means", r.means},
            {"reference", r.reference},
            {"warnings", r.warnings}};
  if (!r.class_means.empty()) j["class_means"] = r.class_means;
  return Dump(j, 1) + "\n";
}

std::string FeatureSchemaJson() {
  Json columns = Json::array();
  std::vector<std::string> names = FeatureColumnNames();
  for (size_t i = 0; i < names.size(); ++i) {
    columns.push_back({{"index", i}, {"name", names[i]}});
  }
  Json j = {{"schema_version", kSchemaVersion},
            {"width", kFeatureWidth},
            {"columns", std::move(columns)}};
  return Dump(j, 1) + "\n";
}

}  // namespace codesoph
