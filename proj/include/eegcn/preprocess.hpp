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

#ifndef EEGCN_PREPROCESS_HPP_
#define EEGCN_PREPROCESS_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eegcn/signal_io.hpp"

namespace eegcn {

enum class Band { Delta, Theta, Alpha, LowerBeta, HigherBeta, Broadband };

inline constexpr std::array<Band, 6> kAllBands = {
    Band::Delta, Band::Theta, Band::Alpha, Band::LowerBeta, Band::HigherBeta, Band::Broadband};

std::string_view band_name(Band band);
// Case-insensitive; also accepts "lower_beta" / "higher-beta" spellings.
std::optional<Band> parse_band(std::string_view name);

struct BandDefinition {
  Band band = Band::Broadband;
  double f_lo = 0.5;
  double f_hi = 40.0;

  std::string_view name() const { return band_name(band); }
};

// Delta 0.5-4, Theta 4-8, Alpha 8-13, LowerBeta 13-22, HigherBeta 22-30,
// Broadband 0.5-40 Hz.
BandDefinition canonical_band(Band band);

// Throws ConfigError unless 0 < f_lo < f_hi < fs/2.
void validate_band(const BandDefinition& band, double fs);

// Analog prototype order of the band-pass; the digital filter has twice as
// many poles and is applied forward and backward.
inline constexpr int kButterworthOrder = 4;

// Zero-phase Butterworth band-pass of every channel. Edges are padded by
// even reflection of 3x the filter order. Throws ConfigError for edges at or
// above Nyquist and DataError when the recording is shorter than the padding.
Recording bandpass(const Recording& recording, const BandDefinition& band);

// One T_w-second slice of a (band-filtered) recording. The samples are a view
// into the shared recording; no copy is made.
struct WindowSegment {
  Band band = Band::Broadband;
  std::size_t index_k = 0;
  Recording source;
  Eigen::Index length = 0;  // L = T_w * fs
  int label = 0;
  std::string source_file;

  Eigen::Index first_sample() const { return static_cast<Eigen::Index>(index_k) * length; }
  auto samples() const { return source.data().middleCols(first_sample(), length); }
  double start_s() const { return static_cast<double>(first_sample()) / source.fs(); }
  double end_s() const { return static_cast<double>(first_sample() + length) / source.fs(); }
};

struct Segmentation {
  std::vector<WindowSegment> windows;
  // Set when the recording holds less than one full window.
  bool too_short = false;
};

// Non-overlapping windows k = 0, 1, ... covering samples [kL, kL + L - 1];
// a trailing remainder shorter than L is dropped. Throws ConfigError when
// window_s * fs is not an integer.
Segmentation segment(const Recording& recording, double window_s, Band band,
                     std::string source_file);

// Label 1 iff the window's sample range intersects [floor(t_s fs), floor(t_e fs)]
// of any annotation. Annotations are assumed to belong to the windows' file.
std::vector<WindowSegment> label_windows(std::vector<WindowSegment> segments,
                                         const std::vector<SeizureAnnotation>& annotations);

std::vector<WindowSegment> extract_ictal_only(const std::vector<WindowSegment>& segments);

}  // namespace eegcn

#endif  // EEGCN_PREPROCESS_HPP_
