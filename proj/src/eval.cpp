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

#include "eegcn/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "eegcn/csv.hpp"
#include "eegcn/errors.hpp"

namespace eegcn {
namespace {

void check_binary(std::span<const int> labels, const char* what) {
  for (int v : labels) {
    if (v != 0 && v != 1) throw ConfigError(std::string(what) + ": labels must be 0 or 1");
  }
}

double ratio(std::size_t num, std::size_t den, const char* name, MetricsReport& r) {
  if (den == 0) {
    r.degenerate.emplace_back(name);
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

// Indices sorted by descending score; ties keep input order.
std::vector<std::size_t> descending(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

void check_scores(std::span<const double> scores, std::span<const int> truth, const char* what) {
  if (scores.size() != truth.size())
    throw ConfigError(std::string(what) + ": scores and labels differ in length");
  if (scores.empty()) throw ConfigError(std::string(what) + ": empty input");
  check_binary(truth, what);
  for (double s : scores) {
    if (!std::isfinite(s)) throw ConfigError(std::string(what) + ": non-finite score");
  }
}

}  // namespace

ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> truth) {
  if (predictions.size() != truth.size())
    throw ConfigError("confusion: predictions and labels differ in length");
  check_binary(predictions, "confusion");
  check_binary(truth, "confusion");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == 1) {
      (predictions[i] == 1 ? cm.tp : cm.fn)++;
    } else {
      (predictions[i] == 1 ? cm.fp : cm.tn)++;
    }
  }
  return cm;
}

std::array<double, kNumMetrics> metric_values(const MetricsReport& r) {
  return {r.accuracy, r.sensitivity, r.specificity, r.precision, r.f1, r.roc_auc, r.pr_auc};
}

std::array<const char*, kNumMetrics> metric_names() {
  return {"accuracy", "sensitivity", "specificity", "precision", "f1", "roc_auc", "pr_auc"};
}

MetricsReport metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw ConfigError("metrics: empty confusion matrix");
  MetricsReport r;
  r.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
  r.sensitivity = ratio(cm.tp, cm.tp + cm.fn, "sensitivity", r);
  r.specificity = ratio(cm.tn, cm.tn + cm.fp, "specificity", r);
  r.precision = ratio(cm.tp, cm.tp + cm.fp, "precision", r);
  const double pr = r.precision + r.sensitivity;
  if (pr == 0.0) {
    r.degenerate.emplace_back("f1");
    r.f1 = 0.0;
  } else {
    r.f1 = 2.0 * r.precision * r.sensitivity / pr;
  }
  return r;
}

RocCurve roc_auc(std::span<const double> scores, std::span<const int> truth) {
  check_scores(scores, truth, "roc_auc");
  const auto pos = static_cast<std::size_t>(std::count(truth.begin(), truth.end(), 1));
  const std::size_t neg = truth.size() - pos;
  if (pos == 0 || neg == 0) throw ConfigError("roc_auc: both classes are required");

  const auto order = descending(scores);
  RocCurve out;
  out.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  std::size_t tp = 0, fp = 0;
  double area = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    const double t = scores[order[i]];
    std::size_t j = i;
    for (; j < order.size() && scores[order[j]] == t; ++j) (truth[order[j]] == 1 ? tp : fp)++;
    const CurvePoint p{static_cast<double>(fp) / static_cast<double>(neg),
                       static_cast<double>(tp) / static_cast<double>(pos), t};
    const CurvePoint& q = out.points.back();
    area += (p.x - q.x) * (p.y + q.y) * 0.5;
    out.points.push_back(p);
    i = j;
  }
  out.auc = std::clamp(area, 0.0, 1.0);
  return out;
}

PrCurve pr_auc(std::span<const double> scores, std::span<const int> truth) {
  check_scores(scores, truth, "pr_auc");
  const auto pos = static_cast<std::size_t>(std::count(truth.begin(), truth.end(), 1));
  if (pos == 0) throw ConfigError("pr_auc: no positive samples");

  const auto order = descending(scores);
  PrCurve out;
  out.points.push_back({0.0, 1.0, std::numeric_limits<double>::infinity()});
  std::size_t tp = 0, fp = 0;
  double area = 0.0, last_recall = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    const double t = scores[order[i]];
    std::size_t j = i;
    for (; j < order.size() && scores[order[j]] == t; ++j) (truth[order[j]] == 1 ? tp : fp)++;
    const double recall = static_cast<double>(tp) / static_cast<double>(pos);
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    area += (recall - last_recall) * precision;
    last_recall = recall;
    out.points.push_back({recall, precision, t});
    i = j;
  }
  out.auprc = std::clamp(area, 0.0, 1.0);
  return out;
}

std::vector<std::size_t> CvPlan::test_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i)
    if (fold_of[i] == fold) out.push_back(i);
  return out;
}

std::vector<std::size_t> CvPlan::train_indices(int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i)
    if (fold_of[i] != fold) out.push_back(i);
  return out;
}

CvPlan kfold_split(std::size_t n, std::span<const int> labels, int k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("kfold_split: k must be at least 2");
  if (labels.size() != n) throw ConfigError("kfold_split: label count differs from n");
  if (n < static_cast<std::size_t>(k)) throw ConfigError("kfold_split: fewer samples than folds");
  check_binary(labels, "kfold_split");

  CvPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.fold_of.assign(n, 0);
  std::mt19937_64 rng(seed);

  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < n; ++i) (labels[i] == 1 ? pos : neg).push_back(i);
  const auto kk = static_cast<std::size_t>(k);

  std::vector<std::size_t> deal;
  if (pos.size() < kk || neg.size() < kk) {
    plan.stratified = false;
    plan.warning = "a class has fewer than " + std::to_string(k) +
                   " samples; folds are not stratified";
    deal.resize(n);
    std::iota(deal.begin(), deal.end(), 0);
    std::shuffle(deal.begin(), deal.end(), rng);
  } else {
    std::shuffle(pos.begin(), pos.end(), rng);
    std::shuffle(neg.begin(), neg.end(), rng);
    deal = pos;
    deal.insert(deal.end(), neg.begin(), neg.end());
  }
  for (std::size_t p = 0; p < deal.size(); ++p) plan.fold_of[deal[p]] = static_cast<int>(p % kk);
  return plan;
}

HoldoutSplit holdout_split(std::span<const int> labels, double train_fraction,
                           std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ConfigError("holdout_split: train_fraction must lie in (0, 1)");
  check_binary(labels, "holdout_split");
  std::mt19937_64 rng(seed);
  HoldoutSplit out;
  for (int cls : {1, 0}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == cls) idx.push_back(i);
    std::shuffle(idx.begin(), idx.end(), rng);
    auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(idx.size())));
    // Keep at least one sample of each present class on both sides when possible.
    if (idx.size() >= 2) n_train = std::clamp<std::size_t>(n_train, 1, idx.size() - 1);
    out.train.insert(out.train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.test.insert(out.test.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  if (out.train.empty() || out.test.empty())
    throw ConfigError("holdout_split: too few samples to split");
  return out;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t z = base;
  for (std::uint64_t v : {stream, index}) {
    z += 0x9E3779B97F4A7C15ULL + v;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
  }
  return z;
}

Aggregate aggregate(const std::vector<MetricsReport>& reports) {
  if (reports.empty()) throw ConfigError("aggregate: no reports");
  const double n = static_cast<double>(reports.size());
  std::array<double, kNumMetrics> sum{}, sq{}, lo, hi;
  lo.fill(std::numeric_limits<double>::infinity());
  hi.fill(-std::numeric_limits<double>::infinity());
  for (const auto& r : reports) {
    const auto v = metric_values(r);
    for (std::size_t m = 0; m < kNumMetrics; ++m) {
      sum[m] += v[m];
      lo[m] = std::min(lo[m], v[m]);
      hi[m] = std::max(hi[m], v[m]);
    }
  }
  std::array<double, kNumMetrics> mean{}, sd{};
  for (std::size_t m = 0; m < kNumMetrics; ++m) {
    // Constant columns are reported exactly, without summation round-off.
    mean[m] = lo[m] == hi[m] ? lo[m] : std::clamp(sum[m] / n, lo[m], hi[m]);
  }
  for (const auto& r : reports) {
    const auto v = metric_values(r);
    for (std::size_t m = 0; m < kNumMetrics; ++m) sq[m] += (v[m] - mean[m]) * (v[m] - mean[m]);
  }
  for (std::size_t m = 0; m < kNumMetrics; ++m)
    sd[m] = reports.size() > 1 ? std::sqrt(sq[m] / (n - 1.0)) : 0.0;

  auto make = [&](const std::array<double, kNumMetrics>& v, const char* fold) {
    MetricsReport r;
    r.accuracy = v[0];
    r.sensitivity = v[1];
    r.specificity = v[2];
    r.precision = v[3];
    r.f1 = v[4];
    r.roc_auc = v[5];
    r.pr_auc = v[6];
    r.band = reports.front().band;
    r.fold = fold;
    return r;
  };
  return {make(mean, "mean"), make(sd, "std"), make(lo, "min"), make(hi, "max")};
}

MetricsReport evaluate_scores(std::span<const double> scores, std::span<const int> truth,
                              ConfusionMatrix* cm_out) {
  check_scores(scores, truth, "evaluate_scores");
  std::vector<int> pred(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) pred[i] = scores[i] > 0.5 ? 1 : 0;
  const ConfusionMatrix cm = confusion(pred, truth);
  if (cm_out) *cm_out = cm;
  MetricsReport r = metrics(cm);
  const std::size_t pos = cm.tp + cm.fn;
  if (pos > 0 && pos < cm.total()) {
    r.roc_auc = roc_auc(scores, truth).auc;
    r.pr_auc = pr_auc(scores, truth).auprc;
  } else {
    r.roc_auc = 0.0;
    r.degenerate.emplace_back("roc_auc");
    if (pos > 0) {
      r.pr_auc = pr_auc(scores, truth).auprc;
    } else {
      r.pr_auc = 0.0;
      r.degenerate.emplace_back("pr_auc");
    }
  }
  return r;
}

CvReport cross_validate(const FeatureDataset& dataset, const CvPlan& plan,
                        const FoldTrainer& trainer, const CvOptions& options) {
  if (plan.fold_of.size() != dataset.size())
    throw ConfigError("cross_validate: plan does not match dataset size");
  CvReport out;
  out.oof_scores.assign(dataset.size(), std::numeric_limits<double>::quiet_NaN());
  std::vector<MetricsReport> reports;
  for (int f = 0; f < plan.k; ++f) {
    const auto test_idx = plan.test_indices(f);
    const auto train_idx = plan.train_indices(f);
    if (test_idx.empty() || train_idx.empty())
      throw ConfigError("cross_validate: fold " + std::to_string(f) + " is empty");
    FeatureDataset train = dataset.subset(train_idx);
    if (options.balance) train = smote(train, options.smote_k, derive_seed(options.seed, 1, f));
    const FeatureDataset test = dataset.subset(test_idx);

    std::vector<double> scores = trainer(train, test.X, f);
    if (scores.size() != test_idx.size())
      throw InvariantError("cross_validate: trainer returned the wrong number of scores");

    FoldResult fr;
    fr.report = evaluate_scores(scores, test.y, &fr.cm);
    fr.report.band = options.band;
    fr.report.fold = std::to_string(f);
    for (std::size_t i = 0; i < test_idx.size(); ++i) out.oof_scores[test_idx[i]] = scores[i];
    fr.test_indices = test_idx;
    fr.scores = std::move(scores);
    out.pooled += fr.cm;
    reports.push_back(fr.report);
    out.folds.push_back(std::move(fr));
  }
  out.summary = aggregate(reports);
  return out;
}

FoldTrainer gcn_trainer(const EegGraph& graph, const GcnConfig& config, std::uint64_t seed) {
  return [&graph, config, seed](const FeatureDataset& train, const RowMatrix& test_rows,
                                int fold) {
    GcnConfig c = config;
    c.seed = derive_seed(seed, 2, static_cast<std::uint64_t>(fold));
    const FitResult fit = fit_model(train.X, train.y, graph, c);
    return predict_proba(fit.model, graph, test_rows);
  };
}

CvReport cross_validate(const FeatureDataset& dataset, const EegGraph& graph,
                        const GcnConfig& config, const CvPlan& plan, const CvOptions& options) {
  return cross_validate(dataset, plan, gcn_trainer(graph, config, options.seed), options);
}

RepeatReport repeat_runs(const std::function<MetricsReport(std::uint64_t)>& experiment,
                         int times, std::uint64_t seed) {
  if (times < 1) throw ConfigError("repeat_runs: times must be at least 1");
  RepeatReport out;
  for (int r = 0; r < times; ++r) {
    MetricsReport m = experiment(seed + static_cast<std::uint64_t>(r));
    m.fold = "repeat" + std::to_string(r);
    out.runs.push_back(std::move(m));
  }
  out.summary = aggregate(out.runs);
  return out;
}

std::string metrics_csv_header() {
  std::string s = "band,fold";
  for (const char* n : metric_names()) (s += ',') += n;
  return s;
}

std::string metrics_csv_row(const MetricsReport& r) {
  std::string s = r.band + ',' + r.fold;
  for (double v : metric_values(r)) (s += ',') += csv::format_double(v);
  return s;
}

std::string curve_csv(const std::vector<CurvePoint>& points, const char* x_name,
                      const char* y_name) {
  std::string s = std::string("threshold,") + x_name + ',' + y_name + '\n';
  for (const auto& p : points) {
    s += std::isinf(p.threshold) ? std::string("inf") : csv::format_double(p.threshold);
    s += ',' + csv::format_double(p.x) + ',' + csv::format_double(p.y) + '\n';
  }
  return s;
}

std::string confusion_csv(const ConfusionMatrix& cm) {
  return "actual,predicted_0,predicted_1\n0," + std::to_string(cm.tn) + ',' +
         std::to_string(cm.fp) + "\n1," + std::to_string(cm.fn) + ',' + std::to_string(cm.tp) +
         '\n';
}

}  // namespace eegcn
