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

#include "codesoph/gcn.h"

#include <cmath>

#include "codesoph/errors.h"
#include "codesoph/rng.h"

namespace codesoph {

namespace {

constexpr double kDivergenceLoss = 1e6;

void GlorotUniform(Matrix& m, Rng& rng) {
  const double s = std::sqrt(6.0 / (m.rows() + m.cols()));
  for (double& x : m.data()) x = rng.Uniform(-s, s);
}

void ReluInPlace(Matrix& m) {
  for (double& x : m.data()) x = x > 0.0 ? x : 0.0;
}

// Binary cross-entropy of sigmoid(z) against y, without overflow.
double SigmoidCrossEntropy(double z, double y) {
  return std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
}

struct TowerCache {
  Matrix z1;   // S·X·W1
  Matrix h1;   // ReLU(z1)
  Matrix sh1;  // S·h1
  Matrix z2;   // sh1·W2
  std::vector<double> pooled;
};

TowerCache Tower(const GcnModel& model, const GraphInput& g) {
  TowerCache c;
  c.z1 = MatMul(g.sx, model.w1);
  c.h1 = c.z1;
  ReluInPlace(c.h1);
  c.sh1 = MatMul(g.s, c.h1);
  c.z2 = MatMul(c.sh1, model.w2);
  const int n = c.z2.rows();
  const int h = c.z2.cols();
  c.pooled.assign(h, 0.0);
  for (int i = 0; i < n; ++i) {
    const double* r = c.z2.row(i);
    for (int j = 0; j < h; ++j) c.pooled[j] += r[j] > 0.0 ? r[j] : 0.0;
  }
  for (double& x : c.pooled) x /= n;
  return c;
}

std::vector<double> Head(const GcnModel& model, const std::vector<double>& a,
                         const std::vector<double>& b) {
  const int h = model.hidden();
  std::vector<double> logits(model.out());
  for (int o = 0; o < model.out(); ++o) {
    double z = model.head_b(0, o);
    for (int j = 0; j < h; ++j) {
      z += a[j] * model.head_w(j, o) + b[j] * model.head_w(h + j, o);
    }
    logits[o] = z;
  }
  return logits;
}

// Accumulates W1/W2 gradients of one tower given d(loss)/d(pooled).
void TowerBackward(const GcnModel& model, const GraphInput& g,
                   const TowerCache& c, const std::vector<double>& d_pooled,
                   Gradients& grads) {
  const int n = c.z2.rows();
  const int h = c.z2.cols();
  Matrix dz2(n, h);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < h; ++j) {
      if (c.z2(i, j) > 0.0) dz2(i, j) = d_pooled[j] / n;
    }
  }
  grads.w2 += MatMulTransA(c.sh1, dz2);
  // S is symmetric, so d(h1) = S·dz2·W2ᵀ.
  Matrix dh1 = MatMul(g.s, MatMulTransB(dz2, model.w2));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < h; ++j) {
      if (c.z1(i, j) <= 0.0) dh1(i, j) = 0.0;
    }
  }
  grads.w1 += MatMulTransA(g.sx, dh1);
}

}  // namespace

std::string_view Name(Task task) {
  return task == Task::kLevel1 ? "level1" : "level2";
}

std::optional<Task> TaskFromName(std::string_view name) {
  if (name == "level1") return Task::kLevel1;
  if (name == "level2") return Task::kLevel2;
  return std::nullopt;
}

int OutputSize(Task task) {
  return task == Task::kLevel1 ? 1 : kNumLabelClasses;
}

Matrix SymmetrizedAdjacency(int n, const std::vector<Edge>& edges) {
  Matrix a(n, n);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return a;
}

Matrix NormalizeAdjacency(const Matrix& a) {
  const int n = a.rows();
  std::vector<double> inv_sqrt(n);
  for (int i = 0; i < n; ++i) {
    double d = 1.0;
    for (int j = 0; j < n; ++j) d += a(i, j);
    inv_sqrt[i] = 1.0 / std::sqrt(d);
  }
  Matrix s(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = a(i, j) + (i == j ? 1.0 : 0.0);
      if (v != 0.0) s(i, j) = v * inv_sqrt[i] * inv_sqrt[j];
    }
  }
  return s;
}

Matrix GcnLayer(const Matrix& s, const Matrix& h, const Matrix& w) {
  Matrix out = MatMul(MatMul(s, h), w);
  ReluInPlace(out);
  return out;
}

GcnModel GcnModel::Initialize(Task task, const Hyperparams& hyper,
                              std::uint64_t seed) {
  GcnModel m;
  m.task = task;
  m.seed = seed;
  m.hyper = hyper;
  const int h = hyper.hidden;
  const int out = OutputSize(task);
  m.w1 = Matrix(kFeatureWidth, h);
  m.w2 = Matrix(h, h);
  m.head_w = Matrix(2 * h, out);
  m.head_b = Matrix(1, out);
  Rng rng(seed);
  GlorotUniform(m.w1, rng);
  GlorotUniform(m.w2, rng);
  GlorotUniform(m.head_w, rng);
  return m;
}

std::array<Matrix*, 4> GcnModel::Parameters() {
  return {&w1, &w2, &head_w, &head_b};
}

std::array<const Matrix*, 4> GcnModel::Parameters() const {
  return {&w1, &w2, &head_w, &head_b};
}

std::string GcnModel::Validate() const {
  const int h = w2.rows();
  const int out = OutputSize(task);
  if (h <= 0 || w2.cols() != h) return "w2 must be square and non-empty";
  if (hyper.hidden != h) return "hidden width disagrees with w2";
  if (w1.rows() != kFeatureWidth || w1.cols() != h) return "w1 shape";
  if (head_w.rows() != 2 * h || head_w.cols() != out) return "head_w shape";
  if (head_b.rows() != 1 || head_b.cols() != out) return "head_b shape";
  for (const Matrix* p : Parameters()) {
    if (!p->AllFinite()) return "non-finite parameter";
  }
  return "";
}

GraphInput PrepareGraph(const Subgraph& graph) {
  const int n = static_cast<int>(graph.nodes.size());
  GraphInput g;
  g.s = NormalizeAdjacency(SymmetrizedAdjacency(n, graph.edges));
  g.sx = MatMul(g.s, graph.features);
  return g;
}

Example PrepareExample(const SplitExample& split, Task task) {
  Example ex;
  ex.before = PrepareGraph(split.before);
  ex.after = PrepareGraph(split.after);
  if (task == Task::kLevel1) {
    ex.target = {static_cast<double>(split.level1)};
  } else {
    ex.target.assign(split.level2.begin(), split.level2.end());
  }
  return ex;
}

std::vector<double> Logits(const GcnModel& model, const Example& ex) {
  TowerCache b = Tower(model, ex.before);
  TowerCache a = Tower(model, ex.after);
  return Head(model, b.pooled, a.pooled);
}

double StableSigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::vector<double> Predict(const GcnModel& model, const Example& ex) {
  std::vector<double> p = Logits(model, ex);
  for (double& x : p) x = StableSigmoid(x);
  return p;
}

double LossAndGradients(const GcnModel& model, const std::vector<Example>& batch,
                        Gradients* grads) {
  const int h = model.hidden();
  const int out = model.out();
  if (grads != nullptr) {
    grads->w1 = Matrix(model.w1.rows(), model.w1.cols());
    grads->w2 = Matrix(h, h);
    grads->head_w = Matrix(2 * h, out);
    grads->head_b = Matrix(1, out);
  }
  const double inv_batch = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  for (const Example& ex : batch) {
    TowerCache b = Tower(model, ex.before);
    TowerCache a = Tower(model, ex.after);
    std::vector<double> logits = Head(model, b.pooled, a.pooled);
    for (int o = 0; o < out; ++o) {
      loss += SigmoidCrossEntropy(logits[o], ex.target[o]) * inv_batch;
    }
    if (grads == nullptr) continue;
    std::vector<double> d_b(h, 0.0);
    std::vector<double> d_a(h, 0.0);
    for (int o = 0; o < out; ++o) {
      const double d = (StableSigmoid(logits[o]) - ex.target[o]) * inv_batch;
      grads->head_b(0, o) += d;
      for (int j = 0; j < h; ++j) {
        grads->head_w(j, o) += b.pooled[j] * d;
        grads->head_w(h + j, o) += a.pooled[j] * d;
        d_b[j] += model.head_w(j, o) * d;
        d_a[j] += model.head_w(h + j, o) * d;
      }
    }
    TowerBackward(model, ex.before, b, d_b, *grads);
    TowerBackward(model, ex.after, a, d_a, *grads);
  }
  const double l2 = model.hyper.l2_weight;
  if (l2 != 0.0) {
    auto params = model.Parameters();
    for (size_t i = 0; i < params.size(); ++i) {
      loss += l2 * params[i]->SquaredNorm();
      if (grads == nullptr) continue;
      Matrix* g = grads->Parameters()[i];
      const std::vector<double>& p = params[i]->data();
      for (size_t k = 0; k < p.size(); ++k) g->data()[k] += 2.0 * l2 * p[k];
    }
  }
  return loss;
}

GcnModel Train(const std::vector<Example>& data, Task task,
               const Hyperparams& hyper, std::uint64_t seed, TrainLog* log) {
  if (data.empty()) throw DataError("empty training set");
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEpsilon = 1e-8;
  GcnModel model = GcnModel::Initialize(task, hyper, seed);
  auto params = model.Parameters();
  std::array<Matrix, 4> m;
  std::array<Matrix, 4> v;
  for (size_t i = 0; i < params.size(); ++i) {
    m[i] = Matrix(params[i]->rows(), params[i]->cols());
    v[i] = Matrix(params[i]->rows(), params[i]->cols());
  }
  TrainLog local;
  TrainLog& out = log != nullptr ? *log : local;
  out.losses.clear();
  Gradients grads;
  double b1t = 1.0;
  double b2t = 1.0;
  for (int epoch = 1; epoch <= hyper.epochs; ++epoch) {
    const double loss = LossAndGradients(model, data, &grads);
    if (!std::isfinite(loss) || loss > kDivergenceLoss) {
      throw DivergenceError("training diverged", epoch, loss);
    }
    out.losses.push_back(loss);
    b1t *= kBeta1;
    b2t *= kBeta2;
    auto g = grads.Parameters();
    for (size_t i = 0; i < params.size(); ++i) {
      std::vector<double>& p = params[i]->data();
      std::vector<double>& mi = m[i].data();
      std::vector<double>& vi = v[i].data();
      const std::vector<double>& gi = g[i]->data();
      for (size_t k = 0; k < p.size(); ++k) {
        mi[k] = kBeta1 * mi[k] + (1.0 - kBeta1) * gi[k];
        vi[k] = kBeta2 * vi[k] + (1.0 - kBeta2) * gi[k] * gi[k];
        const double m_hat = mi[k] / (1.0 - b1t);
        const double v_hat = vi[k] / (1.0 - b2t);
        p[k] -= hyper.learning_rate * m_hat / (std::sqrt(v_hat) + kEpsilon);
      }
    }
    out.final_epoch = epoch;
  }
  return model;
}

}  // namespace codesoph
