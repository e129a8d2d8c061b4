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

#include "eegcn/balance.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>

#include "eegcn/errors.hpp"

namespace eegcn {

FeatureDataset FeatureDataset::from_rows(RowMatrix X, std::vector<int> y) {
  if (static_cast<std::size_t>(X.rows()) != y.size()) {
    throw DataError("feature rows (" + std::to_string(X.rows()) + ") and labels (" +
                    std::to_string(y.size()) + ") differ in count");
  }
  for (int label : y) {
    if (label != 0 && label != 1) throw DataError("labels must be 0 or 1");
  }
  FeatureDataset d;
  d.X = std::move(X);
  d.y = std::move(y);
  d.origin.assign(d.y.size(), RowOrigin{});
  return d;
}

std::array<std::size_t, 2> FeatureDataset::class_counts() const {
  std::array<std::size_t, 2> counts{0, 0};
  for (int label : y) ++counts[static_cast<std::size_t>(label)];
  return counts;
}

FeatureDataset FeatureDataset::subset(std::span<const std::size_t> rows) const {
  FeatureDataset out;
  out.X.resize(static_cast<Eigen::Index>(rows.size()), X.cols());
  out.y.reserve(rows.size());
  out.origin.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.X.row(static_cast<Eigen::Index>(i)) = X.row(static_cast<Eigen::Index>(rows[i]));
    out.y.push_back(y.at(rows[i]));
    out.origin.push_back(origin.at(rows[i]));
  }
  return out;
}

std::vector<std::size_t> knn_minority(const RowMatrix& X_min, std::size_t i, std::size_t k) {
  const auto n = static_cast<std::size_t>(X_min.rows());
  if (i >= n) throw ConfigError("query row out of range");
  if (k >= n) {
    throw ConfigError("k = " + std::to_string(k) + " needs more than " + std::to_string(n) +
                      " minority rows");
  }
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(n - 1);
  const auto query = X_min.row(static_cast<Eigen::Index>(i));
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    dist.emplace_back((X_min.row(static_cast<Eigen::Index>(j)) - query).squaredNorm(), j);
  }
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t j = 0; j < k; ++j) out.push_back(dist[j].second);
  return out;
}

FeatureDataset smote(const FeatureDataset& dataset, std::size_t k, std::uint64_t seed) {
  if (k < 1) throw ConfigError("SMOTE needs k >= 1");
  const auto counts = dataset.class_counts();
  if (counts[0] == 0 || counts[1] == 0) throw ConfigError("SMOTE needs both classes present");
  const int minority_label = counts[1] < counts[0] ? 1 : 0;
  const std::size_t n_min = counts[static_cast<std::size_t>(minority_label)];
  const std::size_t n_maj = counts[static_cast<std::size_t>(1 - minority_label)];
  if (n_min <= k) {
    throw ConfigError("SMOTE with k = " + std::to_string(k) + " needs more than " +
                      std::to_string(k) + " minority rows, got " + std::to_string(n_min));
  }

  std::vector<std::size_t> minority;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (dataset.y[i] == minority_label) minority.push_back(i);
  }
  const std::size_t needed = n_maj - n_min;
  FeatureDataset out = dataset;
  if (needed == 0) return out;

  RowMatrix X_min(static_cast<Eigen::Index>(n_min), dataset.dim());
  for (std::size_t i = 0; i < n_min; ++i) {
    X_min.row(static_cast<Eigen::Index>(i)) = dataset.X.row(static_cast<Eigen::Index>(minority[i]));
  }

  const auto old_rows = static_cast<Eigen::Index>(dataset.size());
  out.X.conservativeResize(old_rows + static_cast<Eigen::Index>(needed), Eigen::NoChange);
  out.y.reserve(dataset.size() + needed);
  out.origin.reserve(dataset.size() + needed);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::unordered_map<std::size_t, std::vector<std::size_t>> neighbours;

  for (std::size_t j = 0; j < needed; ++j) {
    const std::size_t b = j % n_min;
    auto it = neighbours.find(b);
    if (it == neighbours.end()) it = neighbours.emplace(b, knn_minority(X_min, b, k)).first;
    const std::size_t nn = it->second[pick(rng)];
    const double lambda = unit(rng);
    const auto x = X_min.row(static_cast<Eigen::Index>(b));
    const auto x_nn = X_min.row(static_cast<Eigen::Index>(nn));
    out.X.row(old_rows + static_cast<Eigen::Index>(j)) = x + lambda * (x_nn - x);
    out.y.push_back(minority_label);
    out.origin.push_back({RowKind::kSynthetic, minority[b], minority[nn], lambda});
  }
  return out;
}

}  // namespace eegcn
