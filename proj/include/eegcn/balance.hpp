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

#ifndef EEGCN_BALANCE_HPP_
#define EEGCN_BALANCE_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "eegcn/matrix.hpp"

namespace eegcn {

enum class RowKind { kReal, kSynthetic };

// How a row came to be. For synthetic rows, `base` and `neighbor` index the
// real rows of the dataset that was balanced and
// row = X[base] + lambda * (X[neighbor] - X[base]).
struct RowOrigin {
  RowKind kind = RowKind::kReal;
  std::size_t base = 0;
  std::size_t neighbor = 0;
  double lambda = 0.0;
};

// Flattened window features with binary labels, index-aligned.
struct FeatureDataset {
  RowMatrix X;
  std::vector<int> y;
  std::vector<RowOrigin> origin;

  // Validates shapes and labels; every row is marked real.
  static FeatureDataset from_rows(RowMatrix X, std::vector<int> y);

  std::size_t size() const { return y.size(); }
  Eigen::Index dim() const { return X.cols(); }
  // {count of label 0, count of label 1}
  std::array<std::size_t, 2> class_counts() const;
  // Rows in the given order. Origins are copied as-is.
  FeatureDataset subset(std::span<const std::size_t> rows) const;
};

// Indices (into X_min) of the k rows nearest to row i by Euclidean distance,
// excluding i itself; equal distances resolve to the lower index. Throws
// ConfigError when k >= number of rows.
std::vector<std::size_t> knn_minority(const RowMatrix& X_min, std::size_t i, std::size_t k);

inline constexpr std::size_t kDefaultSmoteK = 5;

// SMOTE to exact class parity. Minority rows are used as bases round-robin;
// for each synthetic row a neighbour is drawn uniformly from the base's k
// nearest minority rows, then lambda ~ U(0, 1), both from one mt19937_64
// seeded with `seed` (neighbour draw first). Input rows are kept unchanged
// and synthetic rows are appended. Throws ConfigError for single-class input
// or when the minority class has <= k rows.
FeatureDataset smote(const FeatureDataset& dataset, std::size_t k, std::uint64_t seed);

}  // namespace eegcn

#endif  // EEGCN_BALANCE_HPP_
