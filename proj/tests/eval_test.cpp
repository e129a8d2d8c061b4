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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "eegcn/errors.hpp"
#include "eegcn/eval.hpp"

namespace eegcn {
namespace {

// O(n^2) Mann-Whitney statistic with half credit for ties.
double pairwise_auc(const std::vector<double>& s, const std::vector<int>& y) {
  double credit = 0, pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (y[i] != 1) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j] != 0) continue;
      pairs += 1;
      credit += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  return credit / pairs;
}

// Step-rule average precision by direct threshold sweep.
double naive_ap(const std::vector<double>& s, const std::vector<int>& y) {
  std::set<double, std::greater<>> thresholds(s.begin(), s.end());
  const double P = static_cast<double>(std::count(y.begin(), y.end(), 1));
  double prev_recall = 0, ap = 0;
  for (double t : thresholds) {
    double tp = 0, fp = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] >= t) (y[i] ? tp : fp) += 1;
    const double recall = tp / P;
    ap += (recall - prev_recall) * tp / (tp + fp);
    prev_recall = recall;
  }
  return ap;
}

std::vector<int> random_labels(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution b(p);
  std::vector<int> y(n);
  for (auto& v : y) v = b(rng) ? 1 : 0;
  return y;
}

TEST(ConfusionTest, Examples) {
  const std::vector<int> truth = {1, 1, 0, 0};
  EXPECT_EQ(confusion(truth, truth), (ConfusionMatrix{2, 0, 0, 2}));
  const std::vector<int> inv = {0, 0, 1, 1};
  const auto cm = confusion(inv, truth);
  EXPECT_EQ(cm.tp, 0u);
  EXPECT_EQ(cm.tn, 0u);
  EXPECT_EQ(cm.fn, 2u);
  EXPECT_EQ(cm.fp, 2u);
  EXPECT_THROW(confusion(std::vector<int>{1}, truth), ConfigError);
}

TEST(ConfusionTest, MatchesTallyOracle) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_labels(rng, 1000, 0.4), t = random_labels(rng, 1000, 0.3);
    std::size_t tp = 0, fn = 0, fp = 0, tn = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (t[i] && p[i]) ++tp;
      if (t[i] && !p[i]) ++fn;
      if (!t[i] && p[i]) ++fp;
      if (!t[i] && !p[i]) ++tn;
    }
    EXPECT_EQ(confusion(p, t), (ConfusionMatrix{tp, fn, fp, tn}));
  }
}

TEST(MetricsTest, DeltaLikeExample) {
  const auto r = metrics(ConfusionMatrix{986, 14, 50, 950});
  EXPECT_NEAR(r.sensitivity, 0.986, 1e-15);
  EXPECT_NEAR(r.specificity, 0.95, 1e-15);
  EXPECT_NEAR(r.accuracy, 0.968, 1e-15);
  EXPECT_NEAR(r.precision, 986.0 / 1036.0, 1e-15);
  EXPECT_NEAR(r.f1, 2 * r.precision * r.sensitivity / (r.precision + r.sensitivity), 1e-15);
  EXPECT_FALSE(r.is_degenerate());
}

TEST(MetricsTest, DegenerateAndPerfect) {
  const auto d = metrics(ConfusionMatrix{0, 0, 3, 7});
  EXPECT_EQ(d.sensitivity, 0.0);
  EXPECT_EQ(d.precision, 0.0);
  EXPECT_EQ(d.f1, 0.0);
  EXPECT_TRUE(d.is_degenerate());
  EXPECT_NE(std::find(d.degenerate.begin(), d.degenerate.end(), "sensitivity"), d.degenerate.end());
  const auto p = metrics(ConfusionMatrix{5, 0, 0, 5});
  EXPECT_EQ(p.accuracy, 1.0);
  EXPECT_EQ(p.sensitivity, 1.0);
  EXPECT_EQ(p.specificity, 1.0);
  EXPECT_EQ(p.precision, 1.0);
  EXPECT_EQ(p.f1, 1.0);
  EXPECT_THROW(metrics(ConfusionMatrix{}), ConfigError);
}

TEST(MetricsTest, RandomMatricesAgainstIntegerArithmetic) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> cnt(0, 500);
  for (int trial = 0; trial < 10000; ++trial) {
    ConfusionMatrix cm{cnt(rng), cnt(rng), cnt(rng), cnt(rng)};
    if (cm.total() == 0) continue;
    const auto r = metrics(cm);
    ASSERT_EQ(std::llround(r.accuracy * static_cast<double>(cm.total())), static_cast<long long>(cm.tp + cm.tn));
    for (double v : metric_values(r)) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
    if (cm.tp + cm.fn) {
      ASSERT_EQ(r.sensitivity, static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn));
    }
    if (cm.tn + cm.fp) {
      ASSERT_EQ(r.specificity, static_cast<double>(cm.tn) / static_cast<double>(cm.tn + cm.fp));
    }
    if (cm.tp + cm.fp) {
      ASSERT_EQ(r.precision, static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp));
    }
    // F1 via the integer form 2TP / (2TP + FP + FN).
    if (cm.tp) {
      ASSERT_NEAR(r.f1, 2.0 * static_cast<double>(cm.tp) / static_cast<double>(2 * cm.tp + cm.fp + cm.fn), 1e-12);
    }
    // Class swap: sensitivity and specificity trade places.
    const auto s = metrics(ConfusionMatrix{cm.tn, cm.fp, cm.fn, cm.tp});
    ASSERT_EQ(s.sensitivity, r.specificity);
    ASSERT_EQ(s.specificity, r.sensitivity);
    ASSERT_EQ(s.accuracy, r.accuracy);
  }
}

TEST(RocTest, Examples) {
  const std::vector<int> y = {0, 0, 1, 1};
  EXPECT_EQ(roc_auc(std::vector<double>{0.1, 0.2, 0.8, 0.9}, y).auc, 1.0);
  EXPECT_EQ(roc_auc(std::vector<double>{0.9, 0.8, 0.2, 0.1}, y).auc, 0.0);
  const auto ties = roc_auc(std::vector<double>{0.4, 0.4, 0.4, 0.4}, y);
  EXPECT_EQ(ties.auc, 0.5);
  ASSERT_EQ(ties.points.size(), 2u);
  EXPECT_EQ(ties.points.back().x, 1.0);
  EXPECT_EQ(ties.points.back().y, 1.0);
  EXPECT_THROW(roc_auc(std::vector<double>{0.1, 0.2}, std::vector<int>{1, 1}), ConfigError);
}

TEST(RocTest, MatchesPairwiseOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coarse(0, 20);
  std::uniform_real_distribution<double> fine(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto y = random_labels(rng, 500, 0.35);
    std::vector<double> s(500);
    // Half of the trials use coarse scores to force ties.
    for (std::size_t i = 0; i < s.size(); ++i)
      s[i] = (trial % 2 ? coarse(rng) / 20.0 : fine(rng)) + 0.1 * y[i];
    const auto roc = roc_auc(s, y);
    EXPECT_NEAR(roc.auc, pairwise_auc(s, y), 1e-9);
    for (std::size_t i = 1; i < roc.points.size(); ++i) {
      EXPECT_GE(roc.points[i].x, roc.points[i - 1].x);
      EXPECT_GE(roc.points[i].y, roc.points[i - 1].y);
      EXPECT_LT(roc.points[i].threshold, roc.points[i - 1].threshold);
    }
  }
}

TEST(RocTest, MonotoneTransformInvariant) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  const auto y = random_labels(rng, 300, 0.5);
  std::vector<double> s(300), t(300);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = nd(rng) + y[i];
    t[i] = 1.0 / (1.0 + std::exp(-3.0 * s[i]));
  }
  EXPECT_NEAR(roc_auc(s, y).auc, roc_auc(t, y).auc, 1e-15);
}

TEST(PrTest, Examples) {
  const std::vector<int> y = {0, 1, 0, 1, 1};
  EXPECT_EQ(pr_auc(std::vector<double>{0.1, 0.9, 0.2, 0.8, 0.7}, y).auprc, 1.0);
  EXPECT_NEAR(pr_auc(std::vector<double>(5, 0.3), y).auprc, 0.6, 1e-15);
  EXPECT_THROW(pr_auc(std::vector<double>{0.5, 0.5}, std::vector<int>{0, 0}), ConfigError);
}

TEST(PrTest, MatchesThresholdSweep) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coarse(0, 30);
  for (int trial = 0; trial < 20; ++trial) {
    const auto y = random_labels(rng, 400, 0.3);
    std::vector<double> s(400);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = coarse(rng) / 30.0 + 0.05 * y[i];
    EXPECT_NEAR(pr_auc(s, y).auprc, naive_ap(s, y), 1e-12);
  }
}

TEST(PrTest, RandomScoresNearPrevalence) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u;
  const double pi = 0.3;
  std::vector<double> ap;
  for (int trial = 0; trial < 30; ++trial) {
    const auto y = random_labels(rng, 20000, pi);
    std::vector<double> s(20000);
    for (auto& v : s) v = u(rng);
    const double prevalence = static_cast<double>(std::count(y.begin(), y.end(), 1)) / 20000.0;
    ap.push_back(pr_auc(s, y).auprc - prevalence);
  }
  const double mean = std::accumulate(ap.begin(), ap.end(), 0.0) / 30.0;
  double var = 0;
  for (double a : ap) var += (a - mean) * (a - mean);
  const double sigma = std::sqrt(var / 29.0);
  // Every trial sits within 3 sigma of the prevalence.
  for (double a : ap) EXPECT_LE(std::abs(a), 3 * std::max(sigma, 1e-4));
  EXPECT_LE(std::abs(mean), 3 * sigma / std::sqrt(30.0) + 1e-3);
}

TEST(KfoldTest, SmallBalanced) {
  const std::vector<int> y = {1, 0, 1, 0, 1, 0, 1, 0, 1, 0};
  const auto plan = kfold_split(10, y, 5, 7);
  EXPECT_TRUE(plan.stratified);
  for (int f = 0; f < 5; ++f) {
    const auto t = plan.test_indices(f);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(y[t[0]] + y[t[1]], 1);
    EXPECT_EQ(plan.train_indices(f).size(), 8u);
  }
}

TEST(KfoldTest, PartitionAndStratification) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> size(10, 200);
  std::uniform_real_distribution<double> frac(0.05, 0.95);
  int checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = size(rng);
    const auto y = random_labels(rng, n, frac(rng));
    const auto plan = kfold_split(n, y, 5, static_cast<std::uint64_t>(trial));
    std::vector<int> seen(n, 0);
    std::size_t min_size = n, max_size = 0;
    const double global = static_cast<double>(std::count(y.begin(), y.end(), 1)) / static_cast<double>(n);
    for (int f = 0; f < 5; ++f) {
      const auto t = plan.test_indices(f);
      for (auto i : t) ++seen[i];
      min_size = std::min(min_size, t.size());
      max_size = std::max(max_size, t.size());
      if (!plan.stratified) continue;
      double pos = 0;
      for (auto i : t) pos += y[i];
      ASSERT_LE(std::abs(pos - global * static_cast<double>(t.size())), 1.0 + 1e-9) << trial;
    }
    checked += plan.stratified;
    ASSERT_TRUE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    ASSERT_LE(max_size - min_size, 1u);
    ASSERT_EQ(plan.fold_of, kfold_split(n, y, 5, static_cast<std::uint64_t>(trial)).fold_of);
  }
  EXPECT_GT(checked, 9000);
}

TEST(KfoldTest, FallbackWarns) {
  std::vector<int> y(20, 0);
  y[3] = y[11] = 1;
  const auto plan = kfold_split(20, y, 5, 1);
  EXPECT_FALSE(plan.stratified);
  EXPECT_FALSE(plan.warning.empty());
  EXPECT_THROW(kfold_split(3, std::vector<int>{0, 1, 0}, 5, 1), ConfigError);
}

TEST(HoldoutTest, StratifiedAndDisjoint) {
  std::mt19937_64 rng(9);
  const auto y = random_labels(rng, 1000, 0.2);
  const auto h = holdout_split(y, 0.8, 3);
  std::vector<int> seen(y.size(), 0);
  for (auto i : h.train) ++seen[i];
  for (auto i : h.test) ++seen[i];
  EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  const double pos = static_cast<double>(std::count(y.begin(), y.end(), 1));
  double train_pos = 0;
  for (auto i : h.train) train_pos += y[i];
  EXPECT_LE(std::abs(train_pos - 0.8 * pos), 1.0);
  EXPECT_THROW(holdout_split(y, 1.0, 3), ConfigError);
}

TEST(DeriveSeedTest, DistinctStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 4; ++s)
    for (std::uint64_t i = 0; i < 50; ++i) seen.insert(derive_seed(42, s, i));
  EXPECT_EQ(seen.size(), 200u);
  EXPECT_EQ(derive_seed(42, 1, 3), derive_seed(42, 1, 3));
}

FeatureDataset stub_dataset(std::mt19937_64& rng, std::size_t n, double p) {
  const auto y = random_labels(rng, n, p);
  std::normal_distribution<double> nd;
  RowMatrix X(static_cast<Eigen::Index>(n), 4);
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = nd(rng);
  return FeatureDataset::from_rows(X, y);
}

TEST(CrossValidateTest, MajorityStub) {
  std::mt19937_64 rng(10);
  const auto ds = stub_dataset(rng, 203, 0.25);
  const auto plan = kfold_split(ds.size(), ds.y, 5, 4);
  CvOptions opt;
  opt.band = "Delta";
  std::vector<std::size_t> train_sizes;
  const FoldTrainer majority = [&](const FeatureDataset& train, const RowMatrix& test, int) {
    // SMOTE has balanced the training portion.
    EXPECT_EQ(train.class_counts()[0], train.class_counts()[1]);
    train_sizes.push_back(train.size());
    return std::vector<double>(static_cast<std::size_t>(test.rows()), 0.0);
  };
  const auto rep = cross_validate(ds, plan, majority, opt);
  ASSERT_EQ(rep.folds.size(), 5u);
  for (const auto& f : rep.folds) {
    double neg = 0;
    for (auto i : f.test_indices) neg += ds.y[i] == 0;
    EXPECT_NEAR(f.report.accuracy, neg / static_cast<double>(f.test_indices.size()), 1e-15);
    EXPECT_EQ(f.report.sensitivity, 0.0);
    EXPECT_EQ(f.report.specificity, 1.0);
    EXPECT_EQ(f.report.band, "Delta");
  }
  EXPECT_EQ(rep.pooled.total(), ds.size());
  EXPECT_TRUE(std::none_of(rep.oof_scores.begin(), rep.oof_scores.end(), [](double v) { return std::isnan(v); }));
}

TEST(CrossValidateTest, TrainingNeverSeesTestRows) {
  std::mt19937_64 rng(11);
  auto ds = stub_dataset(rng, 100, 0.4);
  // Tag each row with its index in column 0.
  for (Eigen::Index i = 0; i < ds.X.rows(); ++i) ds.X(i, 0) = static_cast<double>(i);
  const auto plan = kfold_split(ds.size(), ds.y, 5, 1);
  CvOptions opt;
  opt.balance = false;
  const auto rep = cross_validate(ds, plan, [&](const FeatureDataset& train, const RowMatrix& test, int f) {
    const auto test_idx = plan.test_indices(f);
    for (Eigen::Index i = 0; i < train.X.rows(); ++i)
      EXPECT_EQ(plan.fold_of[static_cast<std::size_t>(train.X(i, 0))] == f, false);
    EXPECT_EQ(static_cast<std::size_t>(test.rows()), test_idx.size());
    return std::vector<double>(static_cast<std::size_t>(test.rows()), 0.7);
  }, opt);
  EXPECT_EQ(rep.folds.size(), 5u);
}

TEST(CrossValidateTest, GcnFoldsAreDeterministic) {
  std::mt19937_64 rng(12);
  RowMatrix a = RowMatrix::Zero(3, 3);
  a(0, 1) = a(1, 0) = a(1, 2) = a(2, 1) = 1;
  const auto g = normalize(a);
  auto ds = stub_dataset(rng, 60, 0.3);
  ds.X.resize(60, 6);
  std::normal_distribution<double> nd(0, 0.5);
  for (Eigen::Index i = 0; i < 60; ++i)
    for (Eigen::Index j = 0; j < 6; ++j) ds.X(i, j) = nd(rng) + 2.0 * ds.y[static_cast<std::size_t>(i)];
  GcnConfig c;
  c.layer_dims = {2, 4, 2};
  c.epochs = 30;
  const auto plan = kfold_split(ds.size(), ds.y, 5, 2);
  CvOptions opt;
  opt.smote_k = 3;
  opt.seed = 5;
  const auto r1 = cross_validate(ds, g, c, plan, opt);
  const auto r2 = cross_validate(ds, g, c, plan, opt);
  EXPECT_EQ(r1.oof_scores, r2.oof_scores);
  EXPECT_EQ(metric_values(r1.summary.mean), metric_values(r2.summary.mean));
  EXPECT_GE(r1.summary.mean.accuracy, 0.9);
}

TEST(AggregateTest, MeanStdMinMax) {
  std::vector<MetricsReport> runs(4);
  const double acc[] = {0.9, 0.8, 1.0, 0.7};
  for (int i = 0; i < 4; ++i) runs[static_cast<std::size_t>(i)].accuracy = acc[i];
  const auto a = aggregate(runs);
  EXPECT_NEAR(a.mean.accuracy, 0.85, 1e-15);
  const double var = (0.0025 + 0.0025 + 0.0225 + 0.0225) / 3.0;
  EXPECT_NEAR(a.std.accuracy, std::sqrt(var), 1e-15);
  EXPECT_EQ(a.min.accuracy, 0.7);
  EXPECT_EQ(a.max.accuracy, 1.0);
}

TEST(RepeatRunsTest, SeedsAndAggregation) {
  std::vector<std::uint64_t> seeds;
  const auto fixed = repeat_runs([&](std::uint64_t s) {
    seeds.push_back(s);
    MetricsReport m;
    m.accuracy = 0.93;
    return m;
  }, 10, 100);
  EXPECT_EQ(seeds.front(), 100u);
  EXPECT_EQ(seeds.back(), 109u);
  EXPECT_EQ(fixed.summary.std.accuracy, 0.0);
  EXPECT_EQ(fixed.runs[3].fold, "repeat3");

  const auto varying = repeat_runs([](std::uint64_t s) {
    MetricsReport m;
    m.accuracy = static_cast<double>(s % 7) / 10.0;
    return m;
  }, 10, 3);
  double sum = 0;
  for (const auto& r : varying.runs) sum += r.accuracy;
  EXPECT_NEAR(varying.summary.mean.accuracy, sum / 10.0, 1e-15);
  EXPECT_THROW(repeat_runs([](std::uint64_t) { return MetricsReport{}; }, 0, 1), ConfigError);
}

TEST(EvaluateScoresTest, ThresholdAndSingleClass) {
  ConfusionMatrix cm;
  const auto r = evaluate_scores(std::vector<double>{0.5, 0.51, 0.2, 0.9}, std::vector<int>{0, 1, 0, 0}, &cm);
  EXPECT_EQ(cm, (ConfusionMatrix{1, 0, 1, 2}));
  EXPECT_NEAR(r.roc_auc, 2.0 / 3.0, 1e-15);
  const auto single = evaluate_scores(std::vector<double>{0.1, 0.2}, std::vector<int>{0, 0});
  EXPECT_TRUE(single.is_degenerate());
  EXPECT_EQ(single.roc_auc, 0.0);
  EXPECT_EQ(single.accuracy, 1.0);
}

TEST(CsvTest, Layouts) {
  EXPECT_EQ(metrics_csv_header(), "band,fold,accuracy,sensitivity,specificity,precision,f1,roc_auc,pr_auc");
  MetricsReport m;
  m.band = "Alpha";
  m.fold = "2";
  m.accuracy = 0.5;
  EXPECT_EQ(metrics_csv_row(m).rfind("Alpha,2,0.5", 0), 0u);
  EXPECT_EQ(confusion_csv(ConfusionMatrix{1, 2, 3, 4}),
            "actual,predicted_0,predicted_1\n0,4,3\n1,2,1\n");
  const auto roc = roc_auc(std::vector<double>{0.2, 0.8}, std::vector<int>{0, 1});
  const std::string csv = curve_csv(roc.points, "fpr", "tpr");
  EXPECT_EQ(csv.rfind("threshold,fpr,tpr\ninf,0", 0), 0u);
}

}  // namespace
}  // namespace eegcn
