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

#ifndef EEGCN_EVAL_HPP_
#define EEGCN_EVAL_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "eegcn/balance.hpp"
#include "eegcn/gcn.hpp"

namespace eegcn {

// Positive class = seizure (label 1).
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fn + fp + tn; }
  ConfusionMatrix& operator+=(const ConfusionMatrix& o) {
    tp += o.tp;
    fn += o.fn;
    fp += o.fp;
    tn += o.tn;
    return *this;
  }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> truth);

struct MetricsReport {
  double accuracy = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  double roc_auc = 0.0;
  double pr_auc = 0.0;
  std::string band;
  std::string fold;
  // Names of metrics whose ratio was 0/0 and therefore reported as 0.
  std::vector<std::string> degenerate;

  bool is_degenerate() const { return !degenerate.empty(); }
};

inline constexpr std::size_t kNumMetrics = 7;
// accuracy, sensitivity, specificity, precision, f1, roc_auc, pr_auc
std::array<double, kNumMetrics> metric_values(const MetricsReport& r);
std::array<const char*, kNumMetrics> metric_names();

// Accuracy, sensitivity, specificity, precision and F1 from counts. Throws
// ConfigError on an empty matrix.
MetricsReport metrics(const ConfusionMatrix& cm);

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
  double threshold = 0.0;
};

// Points are (false positive rate, true positive rate), starting at (0, 0),
// one per distinct score in descending order. The trapezoidal area equals
// the Mann-Whitney statistic with half credit for ties.
struct RocCurve {
  std::vector<CurvePoint> points;
  double auc = 0.0;
};
RocCurve roc_auc(std::span<const double> scores, std::span<const int> truth);

// Points are (recall, precision) per distinct threshold, preceded by
// (0, 1). Area = sum over thresholds of (R_i - R_{i-1}) * P_i.
struct PrCurve {
  std::vector<CurvePoint> points;
  double auprc = 0.0;
};
PrCurve pr_auc(std::span<const double> scores, std::span<const int> truth);

struct CvPlan {
  std::vector<int> fold_of;  // per sample, in [0, k)
  int k = 5;
  std::uint64_t seed = 0;
  bool stratified = true;
  std::string warning;

  std::vector<std::size_t> test_indices(int fold) const;
  std::vector<std::size_t> train_indices(int fold) const;
};

// Stratified k-fold assignment: each class is shuffled with mt19937_64(seed),
// positives then negatives are dealt round-robin over folds. Falls back to an
// unstratified deal (with `warning` set) when a class has fewer than k rows.
CvPlan kfold_split(std::size_t n, std::span<const int> labels, int k, std::uint64_t seed);

// Stratified two-way split; `train_fraction` of each class goes to train.
struct HoldoutSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};
HoldoutSplit holdout_split(std::span<const int> labels, double train_fraction, std::uint64_t seed);

// Deterministic sub-seed for (base, stream, index) via splitmix64.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

// Trains on `train` and returns the seizure probability of each test row.
using FoldTrainer = std::function<std::vector<double>(const FeatureDataset& train,
                                                      const RowMatrix& test_rows, int fold)>;

struct CvOptions {
  std::size_t smote_k = kDefaultSmoteK;
  bool balance = true;  // SMOTE the training portion of each fold
  std::uint64_t seed = 0;
  std::string band;
};

struct FoldResult {
  MetricsReport report;
  ConfusionMatrix cm;
  std::vector<std::size_t> test_indices;
  std::vector<double> scores;
};

struct Aggregate {
  MetricsReport mean;
  MetricsReport std;  // sample (n - 1) standard deviation
  MetricsReport min;
  MetricsReport max;
};
Aggregate aggregate(const std::vector<MetricsReport>& reports);

struct CvReport {
  std::vector<FoldResult> folds;
  Aggregate summary;
  // Out-of-fold seizure probability for every sample.
  std::vector<double> oof_scores;
  ConfusionMatrix pooled;
};

// Scores a held-out set: confusion, threshold metrics at p > 0.5, ROC and PR
// areas (0 and flagged degenerate when the set holds a single class).
MetricsReport evaluate_scores(std::span<const double> scores, std::span<const int> truth,
                              ConfusionMatrix* cm_out = nullptr);

CvReport cross_validate(const FeatureDataset& dataset, const CvPlan& plan,
                        const FoldTrainer& trainer, const CvOptions& options);

// GCN trainer: per fold, SMOTE (when enabled) then fit_model with an init
// seed derived from options.seed and the fold index.
FoldTrainer gcn_trainer(const EegGraph& graph, const GcnConfig& config, std::uint64_t seed);

CvReport cross_validate(const FeatureDataset& dataset, const EegGraph& graph,
                        const GcnConfig& config, const CvPlan& plan, const CvOptions& options);

struct RepeatReport {
  std::vector<MetricsReport> runs;
  Aggregate summary;
};

// Runs experiment(seed + r) for r = 0 .. times-1.
RepeatReport repeat_runs(const std::function<MetricsReport(std::uint64_t)>& experiment, int times,
                         std::uint64_t seed);

// --- CSV -------------------------------------------------------------------------

std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsReport& r);
std::string curve_csv(const std::vector<CurvePoint>& points, const char* x_name,
                      const char* y_name);
std::string confusion_csv(const ConfusionMatrix& cm);

}  // namespace eegcn

#endif  // EEGCN_EVAL_HPP_
