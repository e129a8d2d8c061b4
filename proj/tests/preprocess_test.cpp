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

#include <cmath>
#include <numbers>
#include <random>

#include "eegcn/butterworth.hpp"
#include "eegcn/errors.hpp"
#include "eegcn/preprocess.hpp"
#include "eegcn/signal_io.hpp"

namespace eegcn {
namespace {

constexpr double kPi = std::numbers::pi;

// Magnitude of the digital Butterworth band-pass (prototype order n), via the
// bilinear frequency map: prewarp every frequency, then
// |H|^2 = 1 / (1 + ((w^2 - w0^2) / (w B))^(2n)).
double analytic_gain(double f, double f_lo, double f_hi, double fs, int n) {
  auto warp = [fs](double x) { return 2.0 * fs * std::tan(kPi * x / fs); };
  const double w = warp(f), w1 = warp(f_lo), w2 = warp(f_hi);
  const double omega = (w * w - w1 * w2) / (w * (w2 - w1));
  return 1.0 / std::sqrt(1.0 + std::pow(omega, 2 * n));
}

Recording single_channel(const std::vector<double>& x, double fs) {
  RowMatrix d(1, static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) d(0, static_cast<Eigen::Index>(i)) = x[i];
  return Recording({ChannelLabel::parse("A-B")}, fs, d);
}

std::vector<double> sine(double f, double fs, double seconds, double phase = 0.0) {
  std::vector<double> x(static_cast<std::size_t>(seconds * fs));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(2 * kPi * f * static_cast<double>(i) / fs + phase);
  return x;
}

// Least-squares amplitude of a sinusoid at f over samples [from, to).
double fitted_amplitude(const RowMatrix& y, double f, double fs, Eigen::Index from, Eigen::Index to) {
  double ss = 0, cc = 0, sc = 0, ys = 0, yc = 0;
  for (Eigen::Index i = from; i < to; ++i) {
    const double s = std::sin(2 * kPi * f * static_cast<double>(i) / fs);
    const double c = std::cos(2 * kPi * f * static_cast<double>(i) / fs);
    ss += s * s;
    cc += c * c;
    sc += s * c;
    ys += y(0, i) * s;
    yc += y(0, i) * c;
  }
  const double det = ss * cc - sc * sc;
  const double a = (ys * cc - yc * sc) / det;
  const double b = (yc * ss - ys * sc) / det;
  return std::hypot(a, b);
}

TEST(BandTest, CanonicalTable) {
  const std::vector<std::tuple<Band, double, double>> expected = {
      {Band::Delta, 0.5, 4}, {Band::Theta, 4, 8},       {Band::Alpha, 8, 13},
      {Band::LowerBeta, 13, 22}, {Band::HigherBeta, 22, 30}, {Band::Broadband, 0.5, 40}};
  for (const auto& [b, lo, hi] : expected) {
    EXPECT_EQ(canonical_band(b).f_lo, lo);
    EXPECT_EQ(canonical_band(b).f_hi, hi);
    EXPECT_NO_THROW(validate_band(canonical_band(b), 256));
    EXPECT_EQ(parse_band(band_name(b)), b);
  }
  EXPECT_EQ(parse_band("lower_beta"), Band::LowerBeta);
  EXPECT_FALSE(parse_band("gamma").has_value());
}

TEST(BandTest, RejectsBadEdges) {
  EXPECT_THROW(validate_band({Band::Alpha, 13, 8}, 256), ConfigError);
  EXPECT_THROW(validate_band({Band::Alpha, 0, 8}, 256), ConfigError);
  EXPECT_THROW(validate_band({Band::Broadband, 0.5, 128}, 256), ConfigError);
  const auto rec = single_channel(sine(10, 256, 2), 256);
  EXPECT_THROW(bandpass(rec, {Band::Broadband, 0.5, 130}), ConfigError);
}

TEST(FilterTest, FrequencyResponseMatchesAnalyticForm) {
  for (Band b : kAllBands) {
    const auto def = canonical_band(b);
    const auto filter = dsp::butterworth_bandpass(kButterworthOrder, def.f_lo, def.f_hi, 256);
    EXPECT_EQ(filter.order(), 2 * kButterworthOrder);
    for (double f = 0.25; f < 128; f += 0.25) {
      const double got = std::abs(filter.response(f, 256));
      EXPECT_NEAR(got, analytic_gain(f, def.f_lo, def.f_hi, 256, kButterworthOrder), 1e-9)
          << band_name(b) << " at " << f << " Hz";
    }
  }
}

TEST(FilterTest, SteadyStateGainMatchesSquaredResponse) {
  const double fs = 256;
  for (Band b : kAllBands) {
    const auto def = canonical_band(b);
    for (double f : {def.f_lo * 0.5, std::sqrt(def.f_lo * def.f_hi), def.f_hi, def.f_hi * 1.5, 10.0}) {
      if (f >= fs / 2) continue;
      const auto out = bandpass(single_channel(sine(f, fs, 40), fs), def);
      const auto n = out.num_samples();
      const double got = fitted_amplitude(out.data(), f, fs, n / 4, 3 * n / 4);
      const double g = analytic_gain(f, def.f_lo, def.f_hi, fs, kButterworthOrder);
      EXPECT_NEAR(got, g * g, 2e-3) << band_name(b) << " at " << f << " Hz";
    }
  }
}

TEST(FilterTest, AlphaExamples) {
  const double fs = 256;
  const auto alpha = canonical_band(Band::Alpha);
  const auto pass = bandpass(single_channel(sine(10, fs, 10), fs), alpha);
  const double a10 = fitted_amplitude(pass.data(), 10, fs, 512, 2048);
  EXPECT_GE(a10, 0.9);
  EXPECT_LE(a10, 1.1);
  const auto stop = bandpass(single_channel(sine(2, fs, 10), fs), alpha);
  EXPECT_LT(stop.data().middleCols(512, 1536).cwiseAbs().maxCoeff(), 0.1);
}

TEST(FilterTest, ZeroInZeroOut) {
  const auto out = bandpass(single_channel(std::vector<double>(1000, 0.0), 256), canonical_band(Band::Delta));
  EXPECT_EQ(out.data().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(out.num_samples(), 1000);
}

TEST(FilterTest, Linearity) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  std::vector<double> x(3000), y(3000), z(3000);
  const double a = 2.5, b = -0.75;
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = nd(rng);
    y[i] = 10 * nd(rng);
    z[i] = a * x[i] + b * y[i];
  }
  for (Band band : kAllBands) {
    const auto def = canonical_band(band);
    const RowMatrix fx = bandpass(single_channel(x, 256), def).data();
    const RowMatrix fy = bandpass(single_channel(y, 256), def).data();
    const RowMatrix fz = bandpass(single_channel(z, 256), def).data();
    const RowMatrix combo = a * fx + b * fy;
    EXPECT_LE((fz - combo).norm(), 1e-9 * combo.norm()) << band_name(band);
  }
}

TEST(FilterTest, ZeroPhaseCrossCorrelationPeakAtLagZero) {
  // Band-limited input: a few in-band sines with random phases.
  const double fs = 256;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ph(0, 2 * kPi);
  for (Band b : kAllBands) {
    const auto def = canonical_band(b);
    std::vector<double> x(4096, 0.0);
    for (int j = 1; j <= 4; ++j) {
      const double f = def.f_lo + (def.f_hi - def.f_lo) * j / 5.0;
      const auto s = sine(f, fs, 16, ph(rng));
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += s[i];
    }
    const RowMatrix y = bandpass(single_channel(x, fs), def).data();
    int best_lag = 999;
    double best = -1e300;
    for (int lag = -40; lag <= 40; ++lag) {
      double acc = 0;
      for (int i = 200; i < 4096 - 200; ++i) acc += x[static_cast<std::size_t>(i)] * y(0, i + lag);
      if (acc > best) {
        best = acc;
        best_lag = lag;
      }
    }
    EXPECT_EQ(best_lag, 0) << band_name(b);
  }
}

TEST(FilterTest, TooShortForPadding) {
  const auto rec = single_channel(std::vector<double>(24, 1.0), 256);
  EXPECT_THROW(bandpass(rec, canonical_band(Band::Alpha)), DataError);
  EXPECT_NO_THROW(bandpass(single_channel(std::vector<double>(25, 1.0), 256), canonical_band(Band::Alpha)));
}

TEST(SegmentTest, CountsAndLength) {
  const Recording hour({ChannelLabel::parse("A-B")}, 256, RowMatrix::Zero(1, 3600 * 256));
  const auto s = segment(hour, 6, Band::Delta, "h.edf");
  EXPECT_EQ(s.windows.size(), 3600u / 6u);
  EXPECT_FALSE(s.too_short);
  EXPECT_EQ(s.windows.front().length, 1536);
  EXPECT_EQ(s.windows[3].start_s(), 18.0);
  EXPECT_EQ(s.windows[3].end_s(), 24.0);

  const Recording five({ChannelLabel::parse("A-B")}, 256, RowMatrix::Zero(1, 5 * 256));
  const auto t = segment(five, 6, Band::Delta, "f.edf");
  EXPECT_TRUE(t.windows.empty());
  EXPECT_TRUE(t.too_short);

  EXPECT_THROW(segment(hour, 6.001, Band::Delta, "h.edf"), ConfigError);
}

TEST(SegmentTest, WindowsPartitionTheRecording) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  RowMatrix d(2, 256 * 65 + 100);
  for (Eigen::Index i = 0; i < d.size(); ++i) d.data()[i] = nd(rng);
  const Recording rec({ChannelLabel::parse("A-B"), ChannelLabel::parse("B-C")}, 256, d);
  const auto s = segment(rec, 6, Band::Alpha, "x.edf");
  ASSERT_EQ(s.windows.size(), 10u);
  RowMatrix joined(2, 10 * 1536);
  for (std::size_t k = 0; k < s.windows.size(); ++k) {
    EXPECT_EQ(s.windows[k].index_k, k);
    joined.middleCols(static_cast<Eigen::Index>(k) * 1536, 1536) = s.windows[k].samples();
  }
  EXPECT_TRUE((joined.array() == d.leftCols(10 * 1536).array()).all());
}

// Brute force: a window is ictal iff one of its samples lies in [n_s, n_e].
std::vector<int> brute_labels(std::size_t n_windows, Eigen::Index L, double fs,
                              const std::vector<SeizureAnnotation>& ann) {
  std::vector<int> out(n_windows, 0);
  for (std::size_t k = 0; k < n_windows; ++k) {
    for (Eigen::Index i = static_cast<Eigen::Index>(k) * L; i < static_cast<Eigen::Index>(k + 1) * L; ++i) {
      for (const auto& a : ann) {
        const auto ns = static_cast<Eigen::Index>(std::floor(a.t_s * fs));
        const auto ne = static_cast<Eigen::Index>(std::floor(a.t_e * fs));
        if (i >= ns && i <= ne) out[k] = 1;
      }
    }
  }
  return out;
}

std::vector<int> labels_of(const std::vector<WindowSegment>& w) {
  std::vector<int> out;
  for (const auto& s : w) out.push_back(s.label);
  return out;
}

TEST(LabelTest, ExactWindowFromSampleRange) {
  const Recording rec({ChannelLabel::parse("A-B")}, 256, RowMatrix::Zero(1, 10 * 1536));
  auto windows = segment(rec, 6, Band::Delta, "x.edf").windows;
  // Samples [3072, 4607] = window 2 exactly.
  const std::vector<SeizureAnnotation> ann = {{"x.edf", 3072.0 / 256, 4607.0 / 256}};
  const auto labeled = label_windows(windows, ann);
  const std::vector<int> expect = {0, 0, 1, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_EQ(labels_of(labeled), expect);
  EXPECT_EQ(labels_of(labeled), brute_labels(10, 1536, 256, ann));
  EXPECT_EQ(labels_of(label_windows(windows, {})), std::vector<int>(10, 0));
}

TEST(LabelTest, BoundarySpanningMarksBothWindows) {
  const Recording rec({ChannelLabel::parse("A-B")}, 256, RowMatrix::Zero(1, 4 * 1536));
  auto windows = segment(rec, 6, Band::Delta, "x.edf").windows;
  const std::vector<SeizureAnnotation> ann = {{"x.edf", 1535.0 / 256, 1536.0 / 256}};
  EXPECT_EQ(labels_of(label_windows(windows, ann)), (std::vector<int>{1, 1, 0, 0}));
}

TEST(LabelTest, RandomAgainstBruteForceAndMonotone) {
  std::mt19937_64 rng(17);
  const Eigen::Index L = 256;  // 1 s windows keep the brute force cheap
  const Recording rec({ChannelLabel::parse("A-B")}, 256, RowMatrix::Zero(1, 40 * L));
  const auto windows = segment(rec, 1, Band::Delta, "x.edf").windows;
  std::uniform_real_distribution<double> t(0, 40), len(0.001, 5), grow(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<SeizureAnnotation> ann;
    for (int j = 0; j < 3; ++j) {
      const double s = t(rng);
      ann.push_back({"x.edf", s, s + len(rng)});
    }
    const auto got = labels_of(label_windows(windows, ann));
    ASSERT_EQ(got, brute_labels(windows.size(), L, 256, ann));
    auto bigger = ann;
    for (auto& a : bigger) {
      a.t_s = std::max(0.0, a.t_s - grow(rng));
      a.t_e += grow(rng);
    }
    const auto wider = labels_of(label_windows(windows, bigger));
    for (std::size_t k = 0; k < got.size(); ++k) {
      if (got[k] == 1) {
        EXPECT_EQ(wider[k], 1);
      }
    }
  }
}

TEST(IctalOnlyTest, FilterSemantics) {
  const Recording rec({ChannelLabel::parse("A-B")}, 256, RowMatrix::Zero(1, 4 * 1536));
  auto windows = segment(rec, 6, Band::Delta, "x.edf").windows;
  windows[1].label = 1;
  windows[2].label = 1;
  const auto ictal = extract_ictal_only(windows);
  ASSERT_EQ(ictal.size(), 2u);
  EXPECT_EQ(ictal[0].index_k, 1u);
  EXPECT_EQ(ictal[1].index_k, 2u);
  for (auto& w : windows) w.label = 0;
  EXPECT_TRUE(extract_ictal_only(windows).empty());
}

TEST(IctalOnlyTest, TenSecondSyntheticSeizure) {
  for (double start : {30.0, 31.5, 35.99, 36.0}) {
    SynthesisSpec spec;
    spec.duration_s = 120;
    spec.n_channels = 2;
    spec.seizure_intervals = {{start, start + 10}};
    const auto s = synthesize_recording(spec);
    const auto windows =
        label_windows(segment(s.recording, 6, Band::Broadband, "s.edf").windows, s.annotations);
    const auto ictal = extract_ictal_only(windows);
    // Overlap oracle: windows touched by samples floor(t_s fs)..floor(t_e fs).
    const auto first = static_cast<std::size_t>(std::floor(start * 256) / 1536);
    const auto last = static_cast<std::size_t>(std::floor((start + 10) * 256) / 1536);
    EXPECT_EQ(ictal.size(), last - first + 1);
    EXPECT_GE(ictal.size(), 2u);
    EXPECT_LE(ictal.size(), 3u);
  }
}

}  // namespace
}  // namespace eegcn
