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

#include "eegcn/features.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "eegcn/csv.hpp"
#include "eegcn/errors.hpp"

namespace eegcn {

namespace {

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class RealSpectrum {
 public:
  explicit RealSpectrum(std::size_t n) : n_(n) {
    in_ = fftw_alloc_real(n);
    out_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
  }
  ~RealSpectrum() {
    {
      std::lock_guard<std::mutex> lock(fftw_planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }
  RealSpectrum(const RealSpectrum&) = delete;
  RealSpectrum& operator=(const RealSpectrum&) = delete;

  // Power |X(m)|^2 for m = 1..n/2.
  void power(std::span<const double> frame, std::vector<double>& out) {
    std::copy(frame.begin(), frame.end(), in_);
    fftw_execute(plan_);
    out.resize(n_ / 2);
    for (std::size_t m = 1; m <= n_ / 2; ++m) {
      out[m - 1] = out_[m][0] * out_[m][0] + out_[m][1] * out_[m][1];
    }
  }

 private:
  std::size_t n_;
  double* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  fftw_plan plan_ = nullptr;
};

RealSpectrum& spectrum_for(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<RealSpectrum>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RealSpectrum>(n);
  return *slot;
}

double population_variance(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(x.size());
}

std::vector<double> diff(std::span<const double> x) {
  std::vector<double> d;
  if (x.size() < 2) return d;
  d.reserve(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i) d.push_back(x[i] - x[i - 1]);
  return d;
}

}  // namespace

std::string_view feature_name(int feature) {
  static constexpr std::string_view kNames[kNumFeatures] = {
      "spectral_entropy", "activity", "mobility", "complexity", "kurtosis", "skewness",
      "std",              "max_amp",  "variance", "median",     "mean"};
  if (feature < 0 || feature >= kNumFeatures) throw InvariantError("feature index out of range");
  return kNames[feature];
}

Moments moments(std::span<const double> frame) {
  Moments m;
  if (frame.empty()) return m;
  const auto n = static_cast<double>(frame.size());
  double sum = 0.0;
  for (double v : frame) sum += v;
  m.mean = sum / n;
  double ss = 0.0;
  for (double v : frame) ss += (v - m.mean) * (v - m.mean);
  m.variance = ss / n;
  m.std = std::sqrt(m.variance);
  m.max_amp = *std::max_element(frame.begin(), frame.end());

  std::vector<double> sorted(frame.begin(), frame.end());
  const std::size_t mid = sorted.size() / 2;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
  const double upper = sorted[mid];
  if (sorted.size() % 2 == 1) {
    m.median = upper;
  } else {
    const double lower =
        *std::max_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid));
    m.median = (lower + upper) / 2.0;
  }
  return m;
}

ShapeStats shape_stats(std::span<const double> frame) {
  ShapeStats s;
  if (frame.empty()) return s;
  const auto n = static_cast<double>(frame.size());
  double mean = 0.0;
  for (double v : frame) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : frame) ss += (v - mean) * (v - mean);
  const double sigma = std::sqrt(ss / n);
  if (sigma == 0.0) return s;
  double m3 = 0.0, m4 = 0.0;
  for (double v : frame) {
    const double z = (v - mean) / sigma;
    const double z2 = z * z;
    m3 += z2 * z;
    m4 += z2 * z2;
  }
  s.skewness = m3 / n;
  s.kurtosis = m4 / n;
  return s;
}

Hjorth hjorth(std::span<const double> frame) {
  Hjorth h;
  h.activity = population_variance(frame);
  const auto d1 = diff(frame);
  const auto d2 = diff(d1);
  const double var_d1 = population_variance(d1);
  const double var_d2 = population_variance(d2);
  h.mobility = h.activity > 0.0 ? std::sqrt(var_d1 / h.activity) : 0.0;
  const double mobility_d1 = var_d1 > 0.0 ? std::sqrt(var_d2 / var_d1) : 0.0;
  h.complexity = h.mobility > 0.0 ? mobility_d1 / h.mobility : 0.0;
  return h;
}

double spectral_entropy(std::span<const double> frame) {
  if (frame.size() < 2 || frame.size() % 2 != 0) {
    throw ConfigError("spectral entropy needs an even frame length");
  }
  thread_local std::vector<double> power;
  spectrum_for(frame.size()).power(frame, power);
  double total = 0.0;
  for (double p : power) total += p;
  if (!(total > 0.0)) return 0.0;
  double h = 0.0;
  for (double p : power) {
    if (p <= 0.0) continue;
    const double q = p / total;
    h -= q * std::log2(q);
  }
  return h;
}

FeatureVector11 frame_features(std::span<const double> frame) {
  FeatureVector11 f{};
  const Moments m = moments(frame);
  const ShapeStats s = shape_stats(frame);
  const Hjorth h = hjorth(frame);
  f[kSpectralEntropy] = spectral_entropy(frame);
  f[kActivity] = h.activity;
  f[kMobility] = h.mobility;
  f[kComplexity] = h.complexity;
  f[kKurtosis] = s.kurtosis;
  f[kSkewness] = s.skewness;
  f[kStd] = m.std;
  f[kMaxAmp] = m.max_amp;
  f[kVariance] = m.variance;
  f[kMedian] = m.median;
  f[kMean] = m.mean;
  return f;
}

RowMatrix window_node_features(const Eigen::Ref<const RowMatrix>& samples,
                               Eigen::Index frame_length) {
  if (frame_length < 3 || samples.cols() % frame_length != 0) {
    throw DataError("window length " + std::to_string(samples.cols()) +
                    " is not a multiple of the frame length " + std::to_string(frame_length));
  }
  const Eigen::Index seconds = samples.cols() / frame_length;
  RowMatrix out(samples.rows(), seconds * kNumFeatures);
  std::vector<double> frame(static_cast<std::size_t>(frame_length));
  for (Eigen::Index c = 0; c < samples.rows(); ++c) {
    for (Eigen::Index t = 0; t < seconds; ++t) {
      for (Eigen::Index i = 0; i < frame_length; ++i) {
        frame[static_cast<std::size_t>(i)] = samples(c, t * frame_length + i);
      }
      const auto f = frame_features(frame);
      for (int j = 0; j < kNumFeatures; ++j) out(c, t * kNumFeatures + j) = f[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

SegmentFeatureMatrix extract_segment_features(const WindowSegment& segment) {
  if (segment.source.num_channels() != 23) {
    throw DataError("expected 23 channels, got " + std::to_string(segment.source.num_channels()));
  }
  const double fs = segment.source.fs();
  const double frame = std::round(fs);
  if (std::abs(frame - fs) > 1e-9 || segment.length % static_cast<Eigen::Index>(frame) != 0) {
    throw DataError("window length " + std::to_string(segment.length) +
                    " is not divisible by the sampling rate");
  }
  SegmentFeatureMatrix out;
  out.node_features = window_node_features(segment.samples(), static_cast<Eigen::Index>(frame));
  out.label = segment.label;
  out.band = segment.band;
  out.source_file = segment.source_file;
  out.window_k = segment.index_k;
  return out;
}

std::string feature_csv_header(Eigen::Index width) {
  std::string out = "source_file,band,window_k,label";
  for (Eigen::Index j = 0; j < width; ++j) out += ",f_" + std::to_string(j);
  return out;
}

std::string feature_csv_row(const SegmentFeatureMatrix& f) {
  std::string out = f.source_file + "," + std::string(band_name(f.band)) + "," +
                    std::to_string(f.window_k) + "," + std::to_string(f.label);
  const RowMatrix& m = f.node_features;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out += ",";
      out += csv::format_double(m(i, j));
    }
  }
  return out;
}

FeatureTable parse_feature_csv(std::string_view text) {
  const auto lines = csv::lines(text);
  if (lines.empty()) throw ParseError("empty feature CSV", 0, "line");
  const auto header = csv::split(lines[0]);
  if (header.size() < 5 || header[0] != "source_file" || header[3] != "label") {
    throw ParseError("unexpected feature CSV header", 1, "line");
  }
  const std::size_t width = header.size() - 4;
  std::vector<std::vector<double>> values;
  FeatureTable table;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (csv::trim(lines[i]).empty()) continue;
    const auto fields = csv::split(lines[i]);
    if (fields.size() != width + 4) {
      throw ParseError("feature row has " + std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(width + 4), i + 1, "line");
    }
    FeatureRow row;
    row.source_file = std::string(fields[0]);
    auto band = parse_band(fields[1]);
    auto k = csv::parse_int(fields[2]);
    auto label = csv::parse_int(fields[3]);
    if (!band || !k || *k < 0 || !label || (*label != 0 && *label != 1)) {
      throw ParseError("bad feature row metadata", i + 1, "line");
    }
    row.band = *band;
    row.window_k = static_cast<std::size_t>(*k);
    row.label = static_cast<int>(*label);
    std::vector<double> v(width);
    for (std::size_t j = 0; j < width; ++j) {
      auto x = csv::parse_double(fields[j + 4]);
      if (!x) throw ParseError("non-numeric feature value in column " + std::to_string(j), i + 1, "line");
      v[j] = *x;
    }
    table.rows.push_back(std::move(row));
    values.push_back(std::move(v));
  }
  table.X.resize(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < values.size(); ++i) {
    table.X.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const RowVector>(values[i].data(), static_cast<Eigen::Index>(width));
  }
  return table;
}

}  // namespace eegcn
