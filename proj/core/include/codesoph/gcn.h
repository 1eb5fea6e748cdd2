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


#ifndef CODESOPH_GCN_H_
#define CODESOPH_GCN_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "codesoph/features.h"
#include "codesoph/matrix.h"

namespace codesoph {

enum class Task { kLevel1, kLevel2 };

std::string_view Name(Task task);  // "level1" / "level2"
std::optional<Task> TaskFromName(std::string_view name);
int OutputSize(Task task);

// Symmetric 0/1 adjacency of an n-node graph without self-loops.
Matrix SymmetrizedAdjacency(int n, const std::vector<Edge>& edges);

// D^-1/2 (A + I) D^-1/2 with D the row degrees of A + I.
Matrix NormalizeAdjacency(const Matrix& a);

// ReLU(S·H·W).
Matrix GcnLayer(const Matrix& s, const Matrix& h, const Matrix& w);

struct Hyperparams {
  int hidden = 32;
  double learning_rate = 1e-3;
  int epochs = 200;
  double l2_weight = 0.0;
  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

struct GcnModel {
  Task task = Task::kLevel1;
  std::uint64_t seed = 0;
  Hyperparams hyper;
  Matrix w1;      // kFeatureWidth x h
  Matrix w2;      // h x h
  Matrix head_w;  // 2h x out
  Matrix head_b;  // 1 x out

  int hidden() const { return w2.rows(); }
  int out() const { return head_w.cols(); }

  // Glorot-uniform weights, zero bias.
  static GcnModel Initialize(Task task, const Hyperparams& hyper,
                             std::uint64_t seed);

  // Parameter matrices in a fixed order: w1, w2, head_w, head_b.
  std::array<Matrix*, 4> Parameters();
  std::array<const Matrix*, 4> Parameters() const;

  // Empty when all shapes are consistent and entries finite.
  std::string Validate() const;

  friend bool operator==(const GcnModel&, const GcnModel&) = default;
};

// One subgraph with its propagation matrix and the constant first-layer
// product S·X precomputed.
struct GraphInput {
  Matrix s;
  Matrix sx;
};

GraphInput PrepareGraph(const Subgraph& graph);

struct Example {
  GraphInput before;
  GraphInput after;
  std::vector<double> target;  // OutputSize(task) entries in {0, 1}
};

Example PrepareExample(const SplitExample& split, Task task);

std::vector<double> Logits(const GcnModel& model, const Example& ex);

// Sigmoid of the logits.
std::vector<double> Predict(const GcnModel& model, const Example& ex);

struct Gradients {
  Matrix w1;
  Matrix w2;
  Matrix head_w;
  Matrix head_b;
  std::array<Matrix*, 4> Parameters() { return {&w1, &w2, &head_w, &head_b}; }
};

// Mean over the batch of the summed sigmoid cross-entropy plus
// l2_weight * squared norm of all parameters. Fills `grads` when given.
double LossAndGradients(const GcnModel& model, const std::vector<Example>& batch,
                        Gradients* grads);

struct TrainLog {
  std::vector<double> losses;  // loss before each epoch's update
  int final_epoch = 0;
};

// Full-batch Adam. Throws DivergenceError when the loss is non-finite or
// exceeds 1e6.
GcnModel Train(const std::vector<Example>& data, Task task,
               const Hyperparams& hyper, std::uint64_t seed,
               TrainLog* log = nullptr);

double StableSigmoid(double z);

}  // namespace codesoph

#endif  // CODESOPH_GCN_H_
