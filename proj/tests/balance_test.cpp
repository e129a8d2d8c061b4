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
#include <random>

#include "eegcn/balance.hpp"
#include "eegcn/errors.hpp"

namespace eegcn {
namespace {

RowMatrix random_rows(std::mt19937_64& rng, Eigen::Index n, Eigen::Index d) {
  std::normal_distribution<double> nd;
  RowMatrix X(n, d);
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = nd(rng);
  return X;
}

FeatureDataset imbalanced(std::mt19937_64& rng, Eigen::Index n_min, Eigen::Index n_maj,
                          Eigen::Index d, int minority_label = 1) {
  RowMatrix X = random_rows(rng, n_min + n_maj, d);
  std::vector<int> y;
  // Interleave so minority rows are not contiguous.
  for (Eigen::Index i = 0; i < n_min + n_maj; ++i) y.push_back(1 - minority_label);
  std::vector<std::size_t> idx(y.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  for (Eigen::Index i = 0; i < n_min; ++i) y[idx[static_cast<std::size_t>(i)]] = minority_label;
  return FeatureDataset::from_rows(X, y);
}

// Exhaustive neighbour oracle: sort all (distance^2, index) pairs.
std::vector<std::size_t> brute_knn(const RowMatrix& X, std::size_t i, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> all;
  for (Eigen::Index j = 0; j < X.rows(); ++j) {
    if (static_cast<std::size_t>(j) == i) continue;
    double d = 0;
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
      const double t = X(j, c) - X(static_cast<Eigen::Index>(i), c);
      d += t * t;
    }
    all.emplace_back(d, static_cast<std::size_t>(j));
  }
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < k; ++j) out.push_back(all[j].second);
  return out;
}

TEST(KnnTest, CollinearAndTies) {
  RowMatrix X(3, 2);
  X << 0, 0, 1, 0, 3, 0;
  EXPECT_EQ(knn_minority(X, 0, 1), (std::vector<std::size_t>{1}));
  EXPECT_EQ(knn_minority(X, 2, 2), (std::vector<std::size_t>{1, 0}));

  RowMatrix D(4, 1);
  D << 5, 1, 1, 1;  // rows 1..3 tie as neighbours of one another
  EXPECT_EQ(knn_minority(D, 3, 2), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(knn_minority(D, 1, 1), (std::vector<std::size_t>{2}));
}

TEST(KnnTest, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(1);
  const RowMatrix X = random_rows(rng, 200, 7);
  for (std::size_t i = 0; i < 200; ++i) ASSERT_EQ(knn_minority(X, i, 5), brute_knn(X, i, 5)) << i;
}

TEST(KnnTest, Errors) {
  RowMatrix X = RowMatrix::Zero(3, 2);
  EXPECT_THROW(knn_minority(X, 0, 3), ConfigError);
  EXPECT_THROW(knn_minority(X, 5, 1), ConfigError);
}

void check_smote_contract(const FeatureDataset& in, const FeatureDataset& out, std::size_t k) {
  const auto c_in = in.class_counts();
  const auto c_out = out.class_counts();
  ASSERT_EQ(c_out[0], c_out[1]);
  ASSERT_EQ(c_out[0], std::max(c_in[0], c_in[1]));
  const int minority = c_in[1] < c_in[0] ? 1 : 0;

  // Original rows first, unchanged.
  for (std::size_t i = 0; i < in.size(); ++i) {
    ASSERT_EQ(out.y[i], in.y[i]);
    ASSERT_TRUE((out.X.row(static_cast<Eigen::Index>(i)).array() == in.X.row(static_cast<Eigen::Index>(i)).array()).all());
    ASSERT_EQ(out.origin[i].kind, RowKind::kReal);
  }
  std::vector<std::size_t> min_rows;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in.y[i] == minority) min_rows.push_back(i);
  const RowMatrix X_min = in.subset(min_rows).X;

  for (std::size_t j = in.size(); j < out.size(); ++j) {
    const RowOrigin& o = out.origin[j];
    ASSERT_EQ(o.kind, RowKind::kSynthetic);
    ASSERT_EQ(out.y[j], minority);
    ASSERT_EQ(in.y[o.base], minority);
    ASSERT_EQ(in.y[o.neighbor], minority);
    ASSERT_GE(o.lambda, 0.0);
    ASSERT_LT(o.lambda, 1.0);
    // Round-robin over minority rows.
    ASSERT_EQ(o.base, min_rows[(j - in.size()) % min_rows.size()]);
    // Neighbour is one of the base's k nearest minority rows.
    const auto b_pos = static_cast<std::size_t>(std::find(min_rows.begin(), min_rows.end(), o.base) - min_rows.begin());
    const auto nn = brute_knn(X_min, b_pos, k);
    const auto n_pos = static_cast<std::size_t>(std::find(min_rows.begin(), min_rows.end(), o.neighbor) - min_rows.begin());
    ASSERT_NE(std::find(nn.begin(), nn.end(), n_pos), nn.end());
    const auto x = in.X.row(static_cast<Eigen::Index>(o.base));
    const auto x_nn = in.X.row(static_cast<Eigen::Index>(o.neighbor));
    const auto row = out.X.row(static_cast<Eigen::Index>(j));
    for (Eigen::Index c = 0; c < in.X.cols(); ++c) {
      ASSERT_NEAR(row(c), x(c) + o.lambda * (x_nn(c) - x(c)), 1e-12);
      ASSERT_GE(row(c), std::min(x(c), x_nn(c)) - 1e-12);
      ASSERT_LE(row(c), std::max(x(c), x_nn(c)) + 1e-12);
    }
  }
}

TEST(SmoteTest, ContractOnRandomSets) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<int> nmin(6, 30), extra(0, 80);
    const int a = nmin(rng);
    const auto ds = imbalanced(rng, a, a + extra(rng), 5, trial % 2);
    const auto out = smote(ds, 5, static_cast<std::uint64_t>(trial));
    check_smote_contract(ds, out, 5);
  }
}

TEST(SmoteTest, ReplaysFromSeed) {
  std::mt19937_64 rng(3);
  const auto ds = imbalanced(rng, 12, 50, 4);
  const auto out = smote(ds, 3, 99);
  // Independent replay of the documented draw order: neighbour slot, then lambda.
  std::vector<std::size_t> min_rows;
  for (std::size_t i = 0; i < ds.size(); ++i)
    if (ds.y[i] == 1) min_rows.push_back(i);
  const RowMatrix X_min = ds.subset(min_rows).X;
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<std::size_t> pick(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t j = ds.size(); j < out.size(); ++j) {
    const std::size_t b = (j - ds.size()) % min_rows.size();
    const std::size_t nn = brute_knn(X_min, b, 3)[pick(gen)];
    const double lambda = unit(gen);
    EXPECT_EQ(out.origin[j].neighbor, min_rows[nn]);
    EXPECT_EQ(out.origin[j].lambda, lambda);
    const RowVector want = X_min.row(static_cast<Eigen::Index>(b)) +
                           lambda * (X_min.row(static_cast<Eigen::Index>(nn)) - X_min.row(static_cast<Eigen::Index>(b)));
    EXPECT_LE((out.X.row(static_cast<Eigen::Index>(j)) - want).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SmoteTest, DeterminismAndSeedEffect) {
  std::mt19937_64 rng(4);
  const auto ds = imbalanced(rng, 10, 40, 3);
  const auto a = smote(ds, 5, 7), b = smote(ds, 5, 7), c = smote(ds, 5, 8);
  EXPECT_TRUE((a.X.array() == b.X.array()).all());
  EXPECT_EQ(a.y, c.y);
  const auto n = static_cast<Eigen::Index>(ds.size());
  EXPECT_TRUE((a.X.topRows(n).array() == c.X.topRows(n).array()).all());
  EXPECT_FALSE((a.X.bottomRows(a.X.rows() - n).array() == c.X.bottomRows(c.X.rows() - n).array()).all());
}

TEST(SmoteTest, CorpusScaleCounts) {
  // 1280 seizure vs 11305 non-seizure windows balance to 11305 each.
  std::mt19937_64 rng(5);
  const auto ds = imbalanced(rng, 1280, 11305, 2);
  const auto out = smote(ds, 5, 1);
  EXPECT_EQ(out.class_counts()[0], 11305u);
  EXPECT_EQ(out.class_counts()[1], 11305u);
  EXPECT_EQ(out.size() - ds.size(), 10025u);
}

TEST(SmoteTest, AlreadyBalancedIsIdentity) {
  std::mt19937_64 rng(6);
  const auto ds = imbalanced(rng, 10, 10, 3);
  const auto out = smote(ds, 5, 1);
  EXPECT_EQ(out.size(), ds.size());
  EXPECT_TRUE((out.X.array() == ds.X.array()).all());
}

TEST(SmoteTest, Errors) {
  std::mt19937_64 rng(7);
  auto ds = imbalanced(rng, 5, 20, 2);
  EXPECT_THROW(smote(ds, 5, 1), ConfigError);  // minority count <= k
  EXPECT_NO_THROW(smote(ds, 4, 1));
  std::fill(ds.y.begin(), ds.y.end(), 0);
  EXPECT_THROW(smote(ds, 1, 1), ConfigError);
  EXPECT_THROW(FeatureDataset::from_rows(RowMatrix::Zero(2, 2), {0, 2}), DataError);
  EXPECT_THROW(FeatureDataset::from_rows(RowMatrix::Zero(2, 2), {0}), DataError);
}

}  // namespace
}  // namespace eegcn
