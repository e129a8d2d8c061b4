// Copyright 2026 The eegcn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EEGCN_GCN_HPP_
#define EEGCN_GCN_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "eegcn/graphs.hpp"
#include "eegcn/matrix.hpp"

namespace eegcn {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// layer_dims = {input, hidden..., classes}. Every consecutive pair except
// the last is a graph convolution; the last pair is the readout applied to
// the node-mean of the final layer. {66, 2} has no graph layers at all.
struct GcnConfig {
  std::vector<int> layer_dims = {66, 64, 32, 2};
  double learning_rate = 0.01;
  int epochs = 500;
  AdamConfig adam;
  std::uint64_t seed = 0;
  // Z-score node features per column, fitted on the training rows.
  bool standardize_features = true;

  std::size_t num_graph_layers() const { return layer_dims.size() - 2; }
  // Throws ConfigError.
  void validate() const;
};

struct GcnParams {
  std::vector<RowMatrix> theta;  // theta[k] is dims[k] x dims[k+1]
  RowMatrix readout_w;           // dims[K] x 2
  Vector readout_b;              // 2

  static GcnParams zeros_like(const GcnParams& other);
  // Visits every tensor in a fixed order (theta..., readout_w, readout_b)
  // with a stable name such as "theta[1]".
  void for_each(const std::function<void(const std::string&, double*, Eigen::Index)>& fn);
  void for_each_const(
      const std::function<void(const std::string&, const double*, Eigen::Index)>& fn) const;
  std::size_t num_values() const;
};

// He-normal weights (std sqrt(2 / fan_in)) from mt19937_64(config.seed);
// readout bias zero.
GcnParams init_params(const GcnConfig& config);

struct AdamState {
  GcnParams m;
  GcnParams v;
  long long t = 0;

  static AdamState zeros_like(const GcnParams& params);
};

struct ForwardCache {
  RowMatrix propagation;            // S
  std::vector<RowMatrix> propagated;  // S H^(k-1), per graph layer
  std::vector<RowMatrix> pre_activation;  // (S H^(k-1)) theta_k
  RowMatrix last;                   // H^(K) (or X when K = 0)
  RowVector pooled;                 // node mean of `last`
  Vector logits;
  Vector probabilities;
};

struct ForwardResult {
  Vector probabilities;
  ForwardCache cache;
};

// H0 = X; per layer H = ReLU((S H) theta); readout = mean over nodes;
// probabilities = softmax(readout W + b). Throws ConfigError on shape
// mismatch and DataError on non-finite input.
ForwardResult forward(const GcnParams& params, const RowMatrix& S, const RowMatrix& X);

// Numerically stable softmax (max subtracted).
Vector softmax(const Vector& logits);

// -log p[label].
double cross_entropy(const Vector& probabilities, int label);
// Mean of per-sample cross entropies.
double mean_cross_entropy(const std::vector<Vector>& probabilities, const std::vector<int>& labels);

// Exact gradient of -log p[label] for the pass recorded in `cache`. The
// ReLU derivative at exactly zero is taken as 0.
GcnParams backward(const GcnParams& params, const ForwardCache& cache, int label);

// One Adam update with bias correction:
//   m <- b1 m + (1-b1) g, v <- b2 v + (1-b2) g^2,
//   theta <- theta - lr * m_hat / (sqrt(v_hat) + eps).
// Non-finite gradients throw InvariantError naming the offending tensor
// and leave params and state untouched.
void adam_step(GcnParams& params, const GcnParams& grads, AdamState& state,
               const GcnConfig& config);

// Per-column z-scoring of node features. Columns with zero spread are only
// centred.
struct FeatureScaler {
  Vector mean;
  Vector scale;

  bool empty() const { return mean.size() == 0; }
  // `rows` holds flattened node-feature matrices (n_nodes * node_dim wide).
  static FeatureScaler fit(const RowMatrix& rows, Eigen::Index node_dim);
  static FeatureScaler identity(Eigen::Index node_dim);
  RowMatrix transform(const RowMatrix& rows) const;
};

// Loss and mean gradient of a full batch. `rows` holds flattened node
// features (row-major n x d per sample).
struct BatchGradient {
  double loss = 0.0;
  GcnParams grads;
  RowMatrix probabilities;  // N x 2
};

class BatchObjective {
 public:
  BatchObjective(const RowMatrix& rows, std::vector<int> labels, const RowMatrix& S,
                 Eigen::Index node_dim);
  BatchGradient evaluate(const GcnParams& params) const;
  std::size_t size() const { return labels_.size(); }

 private:
  RowMatrix stacked_;     // (n * N) x d, node-major
  RowMatrix propagated_;  // S applied to every sample of stacked_
  std::vector<int> labels_;
  RowMatrix S_;
  RowMatrix S_t_;

  // Buffers reused across evaluate() calls; one objective per thread.
  struct Workspace {
    std::vector<RowMatrix> propagated;
    std::vector<RowMatrix> activation;
    RowMatrix grad;
    RowMatrix scratch;
  };
  mutable Workspace work_;
};

struct TrainResult {
  GcnParams params;
  std::vector<double> loss_history;  // loss before the update of each epoch
};

// Full-batch Adam for config.epochs epochs. Features must already be scaled.
// Throws ConfigError for an empty or single-class set. Deterministic.
TrainResult train(const RowMatrix& rows, const std::vector<int>& labels, const EegGraph& graph,
                  const GcnConfig& config);

// A trained classifier bundled with what is needed to apply it.
struct GcnModel {
  GcnConfig config;
  GcnParams params;
  FeatureScaler scaler;
  std::string adjacency_fingerprint;
  std::string band;
};

// Scales features (when enabled), trains, and bundles the result.
struct FitResult {
  GcnModel model;
  std::vector<double> loss_history;
};
FitResult fit_model(const RowMatrix& rows, const std::vector<int>& labels, const EegGraph& graph,
                    const GcnConfig& config);

struct Prediction {
  int label = 0;
  double p_seizure = 0.0;
};

// Argmax of the forward probabilities (p_seizure > 0.5); an exact 0.5/0.5
// tie is label 0.
Prediction predict(const GcnParams& params, const EegGraph& graph, const RowMatrix& node_features);
Prediction predict(const GcnModel& model, const EegGraph& graph, const RowMatrix& node_features);

// Seizure probability of each flattened row.
std::vector<double> predict_proba(const GcnModel& model, const EegGraph& graph,
                                  const RowMatrix& rows);

}  // namespace eegcn

#endif  // EEGCN_GCN_HPP_
