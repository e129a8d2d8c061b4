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

#ifndef EEGCN_FEATURES_HPP_
#define EEGCN_FEATURES_HPP_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eegcn/matrix.hpp"
#include "eegcn/preprocess.hpp"

namespace eegcn {

// Fixed order of the 11 per-second features.
enum Feature : int {
  kSpectralEntropy = 0,
  kActivity,
  kMobility,
  kComplexity,
  kKurtosis,
  kSkewness,
  kStd,
  kMaxAmp,
  kVariance,
  kMedian,
  kMean,
};
inline constexpr int kNumFeatures = 11;
inline constexpr int kSecondsPerWindow = 6;
inline constexpr int kNodeFeatureDim = kNumFeatures * kSecondsPerWindow;              // 66
inline constexpr int kWindowFeatureDim = 23 * kNodeFeatureDim;                        // 1518

using FeatureVector11 = std::array<double, kNumFeatures>;

std::string_view feature_name(int feature);

struct Moments {
  double mean = 0.0;
  double std = 0.0;
  double variance = 0.0;  // population
  double median = 0.0;
  double max_amp = 0.0;   // signed maximum
};
Moments moments(std::span<const double> frame);

// Third and fourth standardized moments (non-excess kurtosis); both 0 when
// the frame has zero variance.
struct ShapeStats {
  double skewness = 0.0;
  double kurtosis = 0.0;
};
ShapeStats shape_stats(std::span<const double> frame);

// Hjorth parameters on first differences; zero-variance denominators give 0.
struct Hjorth {
  double activity = 0.0;
  double mobility = 0.0;
  double complexity = 0.0;
};
Hjorth hjorth(std::span<const double> frame);

// Shannon entropy (bits) of the normalized one-sided periodogram over bins
// 1..M/2 (DC excluded). An all-zero frame has entropy 0. M must be even.
double spectral_entropy(std::span<const double> frame);

FeatureVector11 frame_features(std::span<const double> frame);

// Node-feature matrix of one window: one row per channel, columns
// [11 t, 11 t + 10] hold second t's FeatureVector11.
struct SegmentFeatureMatrix {
  RowMatrix node_features;
  int label = 0;
  Band band = Band::Broadband;
  std::string source_file;
  std::size_t window_k = 0;
};

// General form: any channel count, frames of `frame_length` samples.
RowMatrix window_node_features(const Eigen::Ref<const RowMatrix>& samples,
                               Eigen::Index frame_length);

// Requires 23 channels and a window length divisible by fs (DataError).
SegmentFeatureMatrix extract_segment_features(const WindowSegment& segment);

// --- CSV ----------------------------------------------------------------------

struct FeatureRow {
  std::string source_file;
  Band band = Band::Broadband;
  std::size_t window_k = 0;
  int label = 0;
};

// Rows of flattened (row-major) node-feature matrices with their metadata.
struct FeatureTable {
  std::vector<FeatureRow> rows;
  RowMatrix X;
};

// Header and rows are single lines without the trailing newline.
std::string feature_csv_header(Eigen::Index width = kWindowFeatureDim);
std::string feature_csv_row(const SegmentFeatureMatrix& features);
FeatureTable parse_feature_csv(std::string_view text);

}  // namespace eegcn

#endif  // EEGCN_FEATURES_HPP_
