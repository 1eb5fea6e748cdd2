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

// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails.

#include <openssl/evp.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "codesoph/cfg.h"
#include "codesoph/errors.h"
#include "codesoph/evaluation.h"
#include "codesoph/io.h"
#include "codesoph/labeling.h"
#include "codesoph/metrics.h"
#include "codesoph/miner.h"
#include "codesoph/pipeline.h"
#include "codesoph/python_parser.h"
#include "codesoph/rng.h"
#include "codesoph/subprocess.h"
#include "codesoph/synthetic.h"
#include "testing/cfg_fixtures.h"
#include "testing/fixture_repo.h"
#include "testing/gcn_oracle.h"
#include "testing/metric_oracles.h"
#include "testing/random_program.h"

namespace codesoph {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fixed(double x, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

// Adds the runtime to the detail and fails when it exceeds `limit` seconds.
Outcome Timed(double limit, const std::function<Outcome()>& body) {
  const Clock::time_point start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = Seconds(start);
  if (elapsed > limit) out.pass = false;
  out.detail += (out.detail.empty() ? "" : "; ") + Fixed(elapsed, 1) +
                " s (limit " + Fixed(limit, 0) + " s)";
  return out;
}

Outcome MetricOracles() {
  Rng rng(20260101);
  int auc_mismatch = 0;
  int metric_mismatch = 0;
  for (int t = 0; t < 1000; ++t) {
    testing::MetricInstance m = testing::RandomMetricInstance(rng);
    if (RankAuc(m.scores, m.labels) != testing::BruteForceAuc(m.scores, m.labels))
      ++auc_mismatch;
    if (!testing::CheckBinaryAgainstOracle(m).empty()) ++metric_mismatch;
  }
  int hamming_mismatch = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = rng.Range(1, 50);
    std::vector<std::vector<double>> scores(n, std::vector<double>(8));
    std::vector<std::vector<int>> labels(n, std::vector<int>(8));
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < 8; ++c) {
        scores[i][c] = rng.Range(0, 4) / 4.0;
        labels[i][c] = rng.Coin() ? 1 : 0;
      }
    if (ComputeMultilabelMetrics(scores, labels).hamming_loss !=
        testing::OracleHamming(scores, labels, 0.5))
      ++hamming_mismatch;
  }
  return {auc_mismatch == 0 && metric_mismatch == 0 && hamming_mismatch == 0,
          "1000 instances: " + std::to_string(auc_mismatch) +
              " AUC mismatches, " + std::to_string(metric_mismatch) +
              " confusion mismatches; 200 multilabel: " +
              std::to_string(hamming_mismatch) + " Hamming mismatches"};
}

Outcome F1Consistency() {
  std::optional<double> f1 = F1Score(0.727, 0.717);
  const bool ok = f1 && std::abs(*f1 - 0.721) <= 0.001;
  return {ok, "F1(.727, .717) = " + (f1 ? Fixed(*f1, 4) : "undefined")};
}

Outcome GradientCheck() {
  double worst = 0.0;
  int entries = 0;
  int resamples = 0;
  bool forward = true;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    testing::GradientCheckResult r = testing::RunGradientCheck(1000 + seed);
    worst = std::max(worst, r.max_relative_error);
    entries += r.entries;
    resamples += r.resamples;
    forward &= r.forward_matches;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2e", worst);
  return {worst < 1e-4 && forward,
          "50 models, " + std::to_string(entries) +
              " entries, max relative error " + buf + ", " +
              std::to_string(resamples) + " resamples" +
              (forward ? "" : ", forward pass disagrees with oracle")};
}

int PathCount(const ControlFlowGraph& cfg) {
  PathEnumeration e = EnumeratePaths(cfg, 1 << 20);
  return e.truncated ? -1 : static_cast<int>(e.paths.size());
}

Outcome CfgOracle() {
  int bad = 0;
  int straight = 0;
  int bad_plus_one = 0;
  std::string first;
  for (const testing::CfgFixture& f : testing::kCfgFixtures) {
    ControlFlowGraph cfg = BuildCfg(python::ParseMethod(f.source));
    if (cfg.num_nodes() != f.nodes || cfg.num_edges() != f.edges ||
        PathCount(cfg) != f.paths) {
      ++bad;
      if (first.empty()) first = f.name;
    }
    if (!f.straight) continue;
    ++straight;
    ControlFlowGraph more =
        BuildCfg(python::ParseMethod(testing::WithLeadingIf(f.source)));
    if (PathCount(more) != f.paths + 1) {
      ++bad_plus_one;
      if (first.empty()) first = f.name;
    }
  }
  return {bad == 0 && bad_plus_one == 0 && straight > 0,
          std::to_string(std::size(testing::kCfgFixtures)) + " fixtures, " +
              std::to_string(bad) + " count mismatches; " +
              std::to_string(straight) + " straight-line, " +
              std::to_string(bad_plus_one) + " off the +1 rule" +
              (first.empty() ? "" : " (first: " + first + ")")};
}

std::vector<std::string> SplitKeepEnds(const std::string& text) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    lines.push_back(text.substr(pos, nl - pos + 1));
    pos = nl + 1;
  }
  return lines;
}

std::string Join(const std::vector<std::string>& methods) {
  std::string out = "import os\n\n";
  for (const std::string& m : methods) out += "\n" + m + "\n";
  return out;
}

bool IsContinuation(const std::string& line) {
  const std::string head = line.substr(line.find_first_not_of(' '));
  for (const char* kw : {"else", "elif", "except", "finally"}) {
    if (head.rfind(kw, 0) == 0) return true;
  }
  return false;
}

// Inserts a guarded block before a random line of the method, at that
// line's indentation. Empty when the result does not parse.
std::string InsertIf(const std::string& method, Rng& rng, int variant) {
  std::vector<std::string> lines = SplitKeepEnds(method);
  for (int attempt = 0; attempt < 20; ++attempt) {
    const int at = rng.Range(1, static_cast<int>(lines.size()) - 1);
    if (IsContinuation(lines[at])) continue;
    const std::string pad(lines[at].find_first_not_of(' '), ' ');
    std::string block;
    switch (variant % 4) {
      case 0:
        block = pad + "if q is None:\n" + pad + "    self.z = p[0]\n";
        break;
      case 1:
        block = pad + "if not p:\n" + pad + "    log(q)\n" + pad +
                "    w = q + 1\n";
        break;
      case 2:
        block = pad + "if self.ready:\n" + pad + "    return q\n";
        break;
      default:
        block = pad + "if p > q:\n" + pad + "    raise ValueError(p)\n";
        break;
    }
    std::string out;
    for (int i = 0; i < static_cast<int>(lines.size()); ++i) {
      if (i == at) out += block;
      out += lines[i];
    }
    try {
      python::ParseMethod(out);
      return out;
    } catch (const ParseError&) {
    }
  }
  return "";
}

Outcome PruneRoundTrip() {
  testing::FixtureRepo repo;
  Rng rng(77);
  std::vector<std::string> methods;
  for (int i = 0; i < 12; ++i) {
    testing::RandomProgramOptions options;
    options.loops = i % 3 != 0;
    std::string src =
        testing::RandomProgramBuilder(500 + i, options).Build().source;
    src.replace(src.find("def m("), 6, "def m" + std::to_string(i) + "(");
    methods.push_back(src);
  }
  repo.Write("pkg/planted.py", Join(methods));
  repo.Commit("initial");
  int if_commits = 0;
  for (int c = 0; if_commits < 40 && c < 400; ++c) {
    const int m = static_cast<int>(rng.Below(methods.size()));
    std::string next = InsertIf(methods[m], rng, c);
    if (next.empty()) continue;
    methods[m] = next;
    repo.Write("pkg/planted.py", Join(methods));
    repo.Commit("guard " + std::to_string(c));
    ++if_commits;
  }

  testing::TempDir out;
  PipelineConfig config;
  config.seed = 5;
  config.repos.push_back({repo.path(), "planted", std::nullopt});
  config.output_dir = out.path();
  std::ostringstream log;
  MineSummary mined = RunMine(config, log);
  BuildSummary built = RunBuildDataset(out.Join("records.jsonl"), config, log);

  std::vector<std::string> audit = ReadJsonLines(out.Join("dataset_audit.jsonl"));
  bool reasons_valid = static_cast<int>(audit.size()) == built.drops;
  std::set<std::string> mismatched_records;
  for (const std::string& line : audit) {
    DroppedExample d = DropFromJson(line);
    if (d.reason == DropReason::kPruneMismatch) {
      mismatched_records.insert(d.key.commit_id + " " + d.key.method_name);
    }
  }
  const int checked = built.round_trip_checked;
  const int iso = built.round_trip_isomorphic;
  const double rate = checked ? static_cast<double>(iso) / checked : 0.0;
  const bool exceptions_audited =
      reasons_valid && built.records_accounted == built.records_in &&
      static_cast<int>(mismatched_records.size()) == checked - iso;
  return {if_commits >= 30 && mined.positives >= 30 && rate >= 0.95 &&
              exceptions_audited,
          std::to_string(if_commits) + " if-adding commits, " +
              std::to_string(mined.positives) + " positive records, " +
              std::to_string(iso) + "/" + std::to_string(checked) +
              " isomorphic (" + Fixed(100 * rate, 1) + "%), " +
              std::to_string(built.drops) + " drops audited" +
              (exceptions_audited ? "" : ", unaudited exceptions")};
}

std::vector<Example> SyntheticExamples(Task task) {
  std::vector<Example> data;
  for (const SyntheticItem& item : GenerateSynthetic(500, 2026, task)) {
    data.push_back(PrepareExample(item.split, task));
  }
  return data;
}

Outcome Learnability() {
  CrossValidationConfig cv;
  cv.k = 5;
  cv.hyper.epochs = 200;
  EvaluationReport l1 =
      CrossValidate(SyntheticExamples(Task::kLevel1), {}, Task::kLevel1, cv, 7);
  EvaluationReport l2 =
      CrossValidate(SyntheticExamples(Task::kLevel2), {}, Task::kLevel2, cv, 7);
  const double auc = l1.means.count("auc") ? l1.means.at("auc") : 0.0;
  const double f1 = l2.means.count("f1_micro") ? l2.means.at("f1_micro") : 0.0;
  return {auc >= 0.95 && f1 >= 0.90,
          "level1 mean AUC " + Fixed(auc) + ", level2 mean micro-F1 " +
              Fixed(f1) + " (n=500, 5 folds, 200 epochs)"};
}

// State shared by the real-corpus and determinism criteria.
struct CorpusRun {
  testing::TempDir work;
  std::vector<std::string> commands;
  std::string source_file;
  std::string method;
};

bool Run(const std::vector<std::string>& argv, std::string* err) {
  ProcessResult r = RunProcess(argv);
  if (r.exit_code != 0) {
    *err = argv[1] + " exited " + std::to_string(r.exit_code) + ": " +
           r.err.substr(0, 300);
    return false;
  }
  return true;
}

std::string Sha256(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::map<std::string, std::string> HashTree(const std::string& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    out[fs::relative(entry.path(), dir).string()] =
        Sha256(ReadFile(entry.path().string()));
  }
  return out;
}

// Runs every command against `out_dir`.
bool RunPipeline(const CorpusRun& run, const std::string& out_dir,
                 std::string* err) {
  const std::string cli = CODESOPH_CLI_PATH;
  const std::string config = run.work.Join("config.json");
  const std::vector<std::string> common = {"--config", config, "--out",
                                           out_dir};
  auto with = [&](std::vector<std::string> argv) {
    argv.insert(argv.begin(), cli);
    argv.insert(argv.end(), common.begin(), common.end());
    return argv;
  };
  return Run(with({"mine"}), err) && Run(with({"build-dataset"}), err) &&
         Run(with({"evaluate", "--task", "level1"}), err) &&
         Run(with({"evaluate", "--task", "level2"}), err) &&
         Run(with({"train", "--task", "level1"}), err) &&
         Run(with({"train", "--task", "level2"}), err) &&
         Run({cli, "recommend", run.source_file, run.method, "--top-k", "3",
              "--level1-model", out_dir + "/model_level1.json",
              "--level2-model", out_dir + "/model_level2.json", "--out",
              out_dir + "/recommend"},
             err);
}

// First method of the cloned sources, in path order, that never appears in
// the mined records.
bool PickHeldOut(CorpusRun& run, const std::string& clone,
                 const std::string& records) {
  std::set<std::string> seen;
  for (const std::string& line : ReadJsonLines(records)) {
    RecordKey k = RecordFromJson(line).key();
    seen.insert(k.file_path + ":" + k.method_name);
  }
  ProcessResult files = RunProcess({"git", "-C", clone, "ls-files", "*.py"});
  std::istringstream in(files.out);
  std::string path;
  while (std::getline(in, path)) {
    std::string text = ReadFile(clone + "/" + path);
    std::vector<MethodSource> methods;
    try {
      methods = ExtractMethods(text);
    } catch (const ParseError&) {
      continue;
    }
    for (const MethodSource& m : methods) {
      if (seen.count(path + ":" + m.qualified_name)) continue;
      if (m.end_line - m.start_line < 4) continue;
      run.source_file = clone + "/" + path;
      run.method = m.qualified_name;
      return true;
    }
  }
  return false;
}

Outcome RealCorpus(CorpusRun& run) {
  const std::string bundles = std::string(CODESOPH_TEST_DATA_DIR) + "/release_corpus";
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(bundles)) {
    if (entry.path().extension() == ".bundle") {
      names.push_back(entry.path().stem().string());
    }
  }
  std::sort(names.begin(), names.end());
  std::string repos;
  std::string err;
  for (const std::string& name : names) {
    const std::string dest = run.work.Join("repos/" + name);
    if (!Run({"git", "clone", "--quiet", bundles + "/" + name + ".bundle", dest},
             &err)) {
      return {false, "clone failed: " + err};
    }
    repos += std::string(repos.empty() ? "" : ", ") + "{\"path\": \"repos/" +
             name + "\", \"name\": \"" + name + "\"}";
  }
  testing::WriteText(run.work.Join("config.json"),
                     "{\"seed\": 42, \"repos\": [" + repos +
                         "], \"miner\": {\"max_files\": 1000}}\n");

  const std::string out = run.work.Join("run1");
  const std::string cli = CODESOPH_CLI_PATH;
  if (!Run({cli, "mine", "--config", run.work.Join("config.json"), "--out", out},
           &err)) {
    return {false, err};
  }
  if (!PickHeldOut(run, run.work.Join("repos/" + names[0]),
                   out + "/records.jsonl")) {
    return {false, "no held-out method found"};
  }
  if (!RunPipeline(run, out, &err)) return {false, err};

  using nlohmann::json;
  json summary = json::parse(ReadFile(out + "/dataset_summary.json"));
  json l1 = json::parse(ReadFile(out + "/report_level1.json"));
  json l2 = json::parse(ReadFile(out + "/report_level2.json"));
  json rec = json::parse(ReadFile(out + "/recommend/recommendation.json"));
  const int rows = summary["rows_out"].get<int>();
  const double auc = l1["means"].value("auc", 0.0);
  const double f1 = l2["means"].value("f1_micro", 0.0);
  const size_t edges = rec["ranked_edges"].size();
  return {static_cast<int>(names.size()) >= 3 &&
              static_cast<int>(names.size()) <= 5 && rows >= 100 &&
              auc > 0.5 && edges > 0,
          std::to_string(names.size()) + " repositories, " +
              std::to_string(rows) + " labeled examples (" +
              std::to_string(summary["positive_rows"].get<int>()) +
              " positive), level1 mean AUC " + Fixed(auc) +
              ", level2 mean micro-F1 " + Fixed(f1) + ", " +
              std::to_string(edges) + " edges ranked for held-out " +
              run.method};
}

Outcome Determinism(const CorpusRun& run) {
  std::string err;
  const std::string second = run.work.Join("run2");
  if (!RunPipeline(run, second, &err)) return {false, err};
  std::map<std::string, std::string> a = HashTree(run.work.Join("run1"));
  std::map<std::string, std::string> b = HashTree(second);
  int differing = 0;
  std::string first;
  for (const auto& [name, hash] : a) {
    auto it = b.find(name);
    if (it == b.end() || it->second != hash) {
      ++differing;
      if (first.empty()) first = name;
    }
  }
  for (const auto& [name, hash] : b) {
    if (!a.count(name)) {
      ++differing;
      if (first.empty()) first = name;
    }
  }
  // The synthetic evaluation is rerun in process as well.
  CrossValidationConfig cv;
  cv.hyper.epochs = 20;
  const std::string r1 = ReportToJson(
      CrossValidate(SyntheticExamples(Task::kLevel1), {}, Task::kLevel1, cv, 3));
  const std::string r2 = ReportToJson(
      CrossValidate(SyntheticExamples(Task::kLevel1), {}, Task::kLevel1, cv, 3));
  const bool synthetic_same = Sha256(r1) == Sha256(r2);
  return {differing == 0 && !a.empty() && synthetic_same,
          std::to_string(a.size()) + " artifacts hashed, " +
              std::to_string(differing) + " differ" +
              (first.empty() ? "" : " (first: " + first + ")") +
              (synthetic_same ? "" : ", synthetic report differs")};
}

}  // namespace
}  // namespace codesoph

int main() {
  using namespace codesoph;
  struct Criterion {
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  CorpusRun corpus;
  const std::vector<Criterion> criteria = {
      {"metric oracle equivalence", 30, MetricOracles},
      {"F1 from reference precision and recall", 1, F1Consistency},
      {"gradient check", 120, GradientCheck},
      {"CFG oracle", 1, CfgOracle},
      {"prune round trip", 60, PruneRoundTrip},
      {"learnability", 300, Learnability},
      {"real-corpus smoke", 1800,
       [&] { return RealCorpus(corpus); }},
      {"determinism", 1800,
       [&] {
         if (corpus.method.empty()) {
           return Outcome{false, "real-corpus run unavailable"};
         }
         return Determinism(corpus);
       }},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o = Timed(criteria[i].limit, criteria[i].run);
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " "
              << criteria[i].name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
