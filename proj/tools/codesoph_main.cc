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

// Command-line driver: mine -> build-dataset -> train -> evaluate ->
// recommend.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "codesoph/errors.h"
#include "codesoph/io.h"
#include "codesoph/pipeline.h"

namespace {

using namespace codesoph;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitDivergence = 3;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string task = "level1";
  std::optional<int> top_k;
  std::string out;
  std::string input;
  std::string method;
  std::string level1_model;
  std::string level2_model;
};

PipelineConfig Resolve(const Options& o) {
  PipelineConfig config;
  if (!o.config_path.empty()) config = LoadConfig(o.config_path);
  if (o.seed) config.seed = o.seed;
  if (o.top_k) config.top_k = *o.top_k;
  if (!o.out.empty()) config.output_dir = o.out;
  return config;
}

Task ResolveTask(const Options& o) { return *TaskFromName(o.task); }

std::string InputOr(const Options& o, const PipelineConfig& config,
                    const std::string& fallback) {
  if (!o.input.empty()) return o.input;
  return (std::filesystem::path(config.output_dir) / fallback).string();
}

void AddCommon(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "pipeline config (JSON)");
  cmd->add_option("--seed", o.seed, "overrides the config seed");
  cmd->add_option("--out", o.out, "output directory");
}

void AddTask(CLI::App* cmd, Options& o) {
  cmd->add_option("--task", o.task, "level1 or level2")
      ->check(CLI::IsMember({"level1", "level2"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extension-point mining, training and recommendation"};
  app.require_subcommand(1);
  Options o;

  CLI::App* mine = app.add_subcommand("mine", "mine records from repositories");
  AddCommon(mine, o);

  CLI::App* build =
      app.add_subcommand("build-dataset", "label and annotate mined records");
  AddCommon(build, o);
  build->add_option("records", o.input, "records.jsonl (default: <out>/records.jsonl)");

  CLI::App* train = app.add_subcommand("train", "train a model on a dataset");
  AddCommon(train, o);
  AddTask(train, o);
  train->add_option("dataset", o.input, "dataset.jsonl (default: <out>/dataset.jsonl)");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "k-fold cross validation on a dataset");
  AddCommon(evaluate, o);
  AddTask(evaluate, o);
  evaluate->add_option("dataset", o.input, "dataset.jsonl (default: <out>/dataset.jsonl)");

  CLI::App* recommend =
      app.add_subcommand("recommend", "rank the extension points of a method");
  AddCommon(recommend, o);
  recommend->add_option("source", o.input, "Python source file")->required();
  recommend->add_option("method", o.method, "function or Class.method")->required();
  recommend->add_option("--level1-model", o.level1_model, "level1 model JSON")
      ->required();
  recommend->add_option("--level2-model", o.level2_model, "level2 model JSON");
  recommend->add_option("--top-k", o.top_k, "edges given a level2 description");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    PipelineConfig config = Resolve(o);
    if (*mine) {
      RunMine(config, std::cerr);
    } else if (*build) {
      RunBuildDataset(InputOr(o, config, "records.jsonl"), config, std::cerr);
    } else if (*train) {
      RunTrain(InputOr(o, config, "dataset.jsonl"), ResolveTask(o), config,
               std::cerr);
    } else if (*evaluate) {
      RunEvaluate(InputOr(o, config, "dataset.jsonl"), ResolveTask(o), config,
                  std::cerr);
    } else if (*recommend) {
      GcnModel level1 = ModelFromJson(ReadFile(o.level1_model));
      std::optional<GcnModel> level2;
      if (!o.level2_model.empty()) {
        level2 = ModelFromJson(ReadFile(o.level2_model));
      }
      Recommendation rec =
          Recommend(ReadFile(o.input), o.method, level1,
                    level2 ? &*level2 : nullptr, config.top_k);
      std::string json = RecommendationToJson(rec);
      if (o.out.empty()) {
        std::cout << json;
      } else {
        std::filesystem::create_directories(o.out);
        WriteFileAtomic(
            (std::filesystem::path(o.out) / "recommendation.json").string(),
            json);
      }
    }
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << " at epoch " << e.epoch()
              << " (loss " << e.loss() << ")\n";
    return kExitDivergence;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
