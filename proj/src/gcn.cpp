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

#include "eegcn/gcn.hpp"

#include <cmath>
#include <random>

#include "eegcn/errors.hpp"

namespace eegcn {

void GcnConfig::validate() const {
  if (layer_dims.size() < 2) throw ConfigError("layer_dims needs at least input and class dims");
  for (int d : layer_dims) {
    if (d < 1) throw ConfigError("layer dims must be positive");
  }
  if (layer_dims.back() != 2) throw ConfigError("last layer dim must be 2 (seizure / non-seizure)");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0 && adam.beta2 >= 0.0 && adam.beta2 < 1.0)) {
    throw ConfigError("Adam betas must lie in [0, 1)");
  }
  if (!(adam.epsilon > 0.0)) throw ConfigError("Adam epsilon must be positive");
}

GcnParams GcnParams::zeros_like(const GcnParams& other) {
  GcnParams z;
  for (const auto& t : other.theta) z.theta.push_back(RowMatrix::Zero(t.rows(), t.cols()));
  z.readout_w = RowMatrix::Zero(other.readout_w.rows(), other.readout_w.cols());
  z.readout_b = Vector::Zero(other.readout_b.size());
  return z;
}

void GcnParams::for_each(
    const std::function<void(const std::string&, double*, Eigen::Index)>& fn) {
  for (std::size_t k = 0; k < theta.size(); ++k) {
    fn("theta[" + std::to_string(k) + "]", theta[k].data(), theta[k].size());
  }
  fn("readout_w", readout_w.data(), readout_w.size());
  fn("readout_b", readout_b.data(), readout_b.size());
}

void GcnParams::for_each_const(
    const std::function<void(const std::string&, const double*, Eigen::Index)>& fn) const {
  for (std::size_t k = 0; k < theta.size(); ++k) {
    fn("theta[" + std::to_string(k) + "]", theta[k].data(), theta[k].size());
  }
  fn("readout_w", readout_w.data(), readout_w.size());
  fn("readout_b", readout_b.data(), readout_b.size());
}

std::size_t GcnParams::num_values() const {
  std::size_t n = static_cast<std::size_t>(readout_w.size() + readout_b.size());
  for (const auto& t : theta) n += static_cast<std::size_t>(t.size());
  return n;
}

GcnParams init_params(const GcnConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  auto he = [&rng](Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / static_cast<double>(rows)));
    RowMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
    return m;
  };
  GcnParams p;
  const auto& d = config.layer_dims;
  for (std::size_t k = 0; k + 2 < d.size(); ++k) p.theta.push_back(he(d[k], d[k + 1]));
  p.readout_w = he(d[d.size() - 2], d.back());
  p.readout_b = Vector::Zero(d.back());
  return p;
}

AdamState AdamState::zeros_like(const GcnParams& params) {
  return {GcnParams::zeros_like(params), GcnParams::zeros_like(params), 0};
}

namespace {

void check_shapes(const GcnParams& params, const RowMatrix& S, const RowMatrix& X) {
  if (S.rows() != S.cols() || S.rows() != X.rows()) {
    throw ConfigError("propagation matrix is " + std::to_string(S.rows()) + "x" +
                      std::to_string(S.cols()) + " but features have " +
                      std::to_string(X.rows()) + " nodes");
  }
  Eigen::Index width = X.cols();
  for (std::size_t k = 0; k < params.theta.size(); ++k) {
    if (params.theta[k].rows() != width) {
      throw ConfigError("theta[" + std::to_string(k) + "] expects width " +
                        std::to_string(params.theta[k].rows()) + ", got " + std::to_string(width));
    }
    width = params.theta[k].cols();
  }
  if (params.readout_w.rows() != width || params.readout_w.cols() != params.readout_b.size()) {
    throw ConfigError("readout shape does not match the last graph layer");
  }
}

RowMatrix relu(const RowMatrix& z) { return z.cwiseMax(0.0); }

// dZ = dH where Z > 0, else 0 (subgradient 0 at the kink).
RowMatrix relu_backward(const RowMatrix& dh, const RowMatrix& z) {
  return (z.array() > 0.0).select(dh, 0.0);
}

}  // namespace

Vector softmax(const Vector& logits) {
  const double mx = logits.maxCoeff();
  Vector e = (logits.array() - mx).exp();
  return e / e.sum();
}

ForwardResult forward(const GcnParams& params, const RowMatrix& S, const RowMatrix& X) {
  check_shapes(params, S, X);
  if (!X.allFinite()) throw DataError("non-finite node features");
  ForwardResult r;
  ForwardCache& c = r.cache;
  c.propagation = S;
  RowMatrix h = X;
  for (const auto& theta : params.theta) {
    c.propagated.push_back(S * h);
    c.pre_activation.push_back(c.propagated.back() * theta);
    h = relu(c.pre_activation.back());
  }
  c.pooled = h.colwise().mean();
  c.last = std::move(h);
  c.logits = (c.pooled * params.readout_w).transpose() + params.readout_b;
  c.probabilities = softmax(c.logits);
  r.probabilities = c.probabilities;
  return r;
}

double cross_entropy(const Vector& probabilities, int label) {
  if (label < 0 || label >= probabilities.size()) throw ConfigError("label out of range");
  return -std::log(probabilities(label));
}

double mean_cross_entropy(const std::vector<Vector>& probabilities, const std::vector<int>& labels) {
  if (probabilities.size() != labels.size() || labels.empty()) {
    throw ConfigError("mean cross entropy needs matching, non-empty inputs");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) sum += cross_entropy(probabilities[i], labels[i]);
  return sum / static_cast<double>(labels.size());
}

GcnParams backward(const GcnParams& params, const ForwardCache& cache, int label) {
  const std::size_t K = params.theta.size();
  if (cache.propagated.size() != K || cache.pre_activation.size() != K ||
      cache.probabilities.size() != params.readout_b.size() ||
      cache.pooled.size() != params.readout_w.rows()) {
    throw ConfigError("forward cache does not match parameter shapes");
  }
  if (label < 0 || label >= cache.probabilities.size()) throw ConfigError("label out of range");

  GcnParams g = GcnParams::zeros_like(params);
  Vector dlogits = cache.probabilities;
  dlogits(label) -= 1.0;
  g.readout_w = cache.pooled.transpose() * dlogits.transpose();
  g.readout_b = dlogits;

  const auto n = static_cast<double>(cache.last.rows());
  const RowVector dpooled = (params.readout_w * dlogits).transpose();
  RowMatrix dh = dpooled.replicate(cache.last.rows(), 1) / n;
  for (std::size_t kk = K; kk-- > 0;) {
    const RowMatrix dz = relu_backward(dh, cache.pre_activation[kk]);
    g.theta[kk] = cache.propagated[kk].transpose() * dz;
    if (kk > 0) dh = cache.propagation.transpose() * (dz * params.theta[kk].transpose());
  }
  return g;
}

void adam_step(GcnParams& params, const GcnParams& grads, AdamState& state,
               const GcnConfig& config) {
  std::string bad;
  grads.for_each_const([&bad](const std::string& name, const double* data, Eigen::Index n) {
    if (!bad.empty()) return;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!std::isfinite(data[i])) {
        bad = name + " element " + std::to_string(i) + " = " + std::to_string(data[i]);
        return;
      }
    }
  });
  if (!bad.empty()) throw InvariantError("Adam step rejected: non-finite gradient in " + bad);
  if (params.num_values() != grads.num_values() || params.num_values() != state.m.num_values()) {
    throw ConfigError("Adam step: parameter, gradient and state shapes differ");
  }

  const auto& a = config.adam;
  state.t += 1;
  const double c1 = 1.0 - std::pow(a.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(a.beta2, static_cast<double>(state.t));
  const double lr = config.learning_rate;

  std::vector<std::pair<double*, Eigen::Index>> p_t, m_t, v_t;
  std::vector<std::pair<const double*, Eigen::Index>> g_t;
  auto collect = [](std::vector<std::pair<double*, Eigen::Index>>& out) {
    return [&out](const std::string&, double* data, Eigen::Index n) { out.emplace_back(data, n); };
  };
  params.for_each(collect(p_t));
  grads.for_each_const(
      [&g_t](const std::string&, const double* data, Eigen::Index n) { g_t.emplace_back(data, n); });
  state.m.for_each(collect(m_t));
  state.v.for_each(collect(v_t));
  for (std::size_t k = 0; k < p_t.size(); ++k) {
    if (p_t[k].second != g_t[k].second || p_t[k].second != m_t[k].second) {
      throw ConfigError("Adam step: tensor shapes differ");
    }
    double* p = p_t[k].first;
    const double* gr = g_t[k].first;
    double* m = m_t[k].first;
    double* v = v_t[k].first;
    for (Eigen::Index i = 0; i < p_t[k].second; ++i) {
      m[i] = a.beta1 * m[i] + (1.0 - a.beta1) * gr[i];
      v[i] = a.beta2 * v[i] + (1.0 - a.beta2) * gr[i] * gr[i];
      const double m_hat = m[i] / c1;
      const double v_hat = v[i] / c2;
      p[i] -= lr * m_hat / (std::sqrt(v_hat) + a.epsilon);
    }
  }
}

// --- feature scaling ------------------------------------------------------------

FeatureScaler FeatureScaler::fit(const RowMatrix& rows, Eigen::Index node_dim) {
  if (node_dim < 1 || rows.cols() % node_dim != 0 || rows.rows() == 0) {
    throw ConfigError("feature rows are not a whole number of node vectors");
  }
  Eigen::Map<const RowMatrix> nodes(rows.data(), rows.size() / node_dim, node_dim);
  FeatureScaler s;
  s.mean = nodes.colwise().mean().transpose();
  const RowMatrix centred = nodes.rowwise() - s.mean.transpose();
  s.scale = (centred.colwise().squaredNorm() / static_cast<double>(nodes.rows()))
                .cwiseSqrt()
                .transpose();
  for (Eigen::Index j = 0; j < s.scale.size(); ++j) {
    if (!(s.scale(j) > 0.0) || !std::isfinite(s.scale(j))) s.scale(j) = 1.0;
  }
  return s;
}

FeatureScaler FeatureScaler::identity(Eigen::Index node_dim) {
  return {Vector::Zero(node_dim), Vector::Ones(node_dim)};
}

RowMatrix FeatureScaler::transform(const RowMatrix& rows) const {
  const Eigen::Index d = mean.size();
  if (d == 0 || rows.cols() % d != 0) throw ConfigError("scaler width does not divide feature width");
  RowMatrix out = rows;
  Eigen::Map<RowMatrix> nodes(out.data(), out.size() / d, d);
  nodes = (nodes.rowwise() - mean.transpose()).array().rowwise() / scale.transpose().array();
  return out;
}

// --- batched objective -------------------------------------------------------------

namespace {

// Batch tensors are stored node-major: row (node * N + sample). Viewed as an
// n x (N * d) matrix, applying S to every sample is one product.
void propagate(const RowMatrix& M, const RowMatrix& in, RowMatrix& out) {
  const Eigen::Index n = M.rows();
  const Eigen::Index width = in.size() / n;
  out.resize(in.rows(), in.cols());
  Eigen::Map<RowMatrix>(out.data(), n, width).noalias() =
      M * Eigen::Map<const RowMatrix>(in.data(), n, width);
}

}  // namespace

BatchObjective::BatchObjective(const RowMatrix& rows, std::vector<int> labels, const RowMatrix& S,
                               Eigen::Index node_dim)
    : labels_(std::move(labels)), S_(S), S_t_(S.transpose()) {
  const Eigen::Index n = S.rows();
  if (rows.rows() != static_cast<Eigen::Index>(labels_.size()) || rows.cols() != n * node_dim) {
    throw ConfigError("batch rows must be " + std::to_string(n) + "x" + std::to_string(node_dim) +
                      " node-feature matrices, one per label");
  }
  if (!rows.allFinite()) throw DataError("non-finite node features");
  const Eigen::Index N = rows.rows();
  stacked_.resize(N * n, node_dim);
  for (Eigen::Index v = 0; v < n; ++v) {
    stacked_.middleRows(v * N, N) = rows.middleCols(v * node_dim, node_dim);
  }
  propagate(S_, stacked_, propagated_);
}

BatchGradient BatchObjective::evaluate(const GcnParams& params) const {
  const Eigen::Index n = S_.rows();
  const auto N = static_cast<Eigen::Index>(labels_.size());
  const std::size_t K = params.theta.size();
  Workspace& w = work_;
  w.propagated.resize(K);
  w.activation.resize(K);

  // Forward. Activations are kept post-ReLU; h > 0 marks the same entries as z > 0.
  for (std::size_t k = 0; k < K; ++k) {
    if (k > 0) propagate(S_, w.activation[k - 1], w.propagated[k]);
    const RowMatrix& input = k == 0 ? propagated_ : w.propagated[k];
    w.activation[k].noalias() = input * params.theta[k];
    w.activation[k] = w.activation[k].cwiseMax(0.0);
  }
  const RowMatrix& last = K == 0 ? stacked_ : w.activation[K - 1];
  const Eigen::Index width = last.cols();

  RowMatrix pooled = RowMatrix::Zero(N, width);
  for (Eigen::Index v = 0; v < n; ++v) pooled += last.middleRows(v * N, N);
  pooled /= static_cast<double>(n);

  RowMatrix logits = pooled * params.readout_w;
  logits.rowwise() += params.readout_b.transpose();

  BatchGradient out;
  out.probabilities.resize(N, logits.cols());
  RowMatrix dlogits(N, logits.cols());
  double loss = 0.0;
  for (Eigen::Index b = 0; b < N; ++b) {
    const double mx = logits.row(b).maxCoeff();
    const RowVector shifted = logits.row(b).array() - mx;
    const double lse = std::log(shifted.array().exp().sum());
    const int y = labels_[static_cast<std::size_t>(b)];
    loss -= shifted(y) - lse;
    out.probabilities.row(b) = (shifted.array() - lse).exp();
    dlogits.row(b) = out.probabilities.row(b);
    dlogits(b, y) -= 1.0;
  }
  out.loss = loss / static_cast<double>(N);
  dlogits /= static_cast<double>(N);

  out.grads = GcnParams::zeros_like(params);
  out.grads.readout_w.noalias() = pooled.transpose() * dlogits;
  out.grads.readout_b = dlogits.colwise().sum().transpose();
  if (K == 0) return out;

  const RowMatrix dpooled = dlogits * params.readout_w.transpose() / static_cast<double>(n);
  w.grad.resize(N * n, width);
  for (Eigen::Index v = 0; v < n; ++v) w.grad.middleRows(v * N, N) = dpooled;

  for (std::size_t kk = K; kk-- > 0;) {
    // dZ = dH where the unit was active (subgradient 0 at the kink).
    w.grad = (w.activation[kk].array() > 0.0).select(w.grad, 0.0);
    const RowMatrix& input = kk == 0 ? propagated_ : w.propagated[kk];
    out.grads.theta[kk].noalias() = input.transpose() * w.grad;
    if (kk > 0) {
      w.scratch.noalias() = w.grad * params.theta[kk].transpose();
      propagate(S_t_, w.scratch, w.grad);
    }
  }
  return out;
}

TrainResult train(const RowMatrix& rows, const std::vector<int>& labels, const EegGraph& graph,
                  const GcnConfig& config) {
  config.validate();
  if (labels.empty()) throw ConfigError("training set is empty");
  std::size_t positives = 0;
  for (int y : labels) positives += y == 1 ? 1 : 0;
  if (positives == 0 || positives == labels.size()) {
    throw ConfigError("training set contains a single class");
  }
  const BatchObjective objective(rows, labels, graph.propagation, config.layer_dims.front());
  TrainResult r;
  r.params = init_params(config);
  AdamState state = AdamState::zeros_like(r.params);
  r.loss_history.reserve(static_cast<std::size_t>(config.epochs));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const BatchGradient bg = objective.evaluate(r.params);
    if (!std::isfinite(bg.loss)) {
      throw InvariantError("training loss became non-finite at epoch " + std::to_string(epoch));
    }
    r.loss_history.push_back(bg.loss);
    adam_step(r.params, bg.grads, state, config);
  }
  return r;
}

FitResult fit_model(const RowMatrix& rows, const std::vector<int>& labels, const EegGraph& graph,
                    const GcnConfig& config) {
  config.validate();
  const Eigen::Index node_dim = config.layer_dims.front();
  FitResult out;
  out.model.config = config;
  out.model.scaler = config.standardize_features ? FeatureScaler::fit(rows, node_dim)
                                                 : FeatureScaler::identity(node_dim);
  TrainResult t = train(out.model.scaler.transform(rows), labels, graph, config);
  out.model.params = std::move(t.params);
  out.model.adjacency_fingerprint = adjacency_fingerprint(graph.adjacency);
  out.loss_history = std::move(t.loss_history);
  return out;
}

Prediction predict(const GcnParams& params, const EegGraph& graph, const RowMatrix& node_features) {
  const auto r = forward(params, graph.propagation, node_features);
  Prediction p;
  p.p_seizure = r.probabilities(1);
  // Two-class argmax taken as p1 > 1/2, the same threshold the evaluation
  // path applies to scores.
  p.label = p.p_seizure > 0.5 ? 1 : 0;
  return p;
}

Prediction predict(const GcnModel& model, const EegGraph& graph, const RowMatrix& node_features) {
  RowMatrix flat = Eigen::Map<const RowMatrix>(node_features.data(), 1, node_features.size());
  RowMatrix scaled = model.scaler.empty() ? flat : model.scaler.transform(flat);
  Eigen::Map<const RowMatrix> x(scaled.data(), node_features.rows(), node_features.cols());
  return predict(model.params, graph, RowMatrix(x));
}

std::vector<double> predict_proba(const GcnModel& model, const EegGraph& graph,
                                  const RowMatrix& rows) {
  const Eigen::Index n = graph.num_nodes();
  if (n == 0 || rows.cols() % n != 0) throw ConfigError("feature width is not a multiple of node count");
  const Eigen::Index d = rows.cols() / n;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(rows.rows()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    RowMatrix x = Eigen::Map<const RowMatrix>(rows.row(i).data(), n, d);
    out.push_back(predict(model, graph, x).p_seizure);
  }
  return out;
}

}  // namespace eegcn
