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

#include "eegcn/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "eegcn/butterworth.hpp"
#include "eegcn/errors.hpp"

namespace eegcn {

std::string_view band_name(Band band) {
  switch (band) {
    case Band::Delta: return "Delta";
    case Band::Theta: return "Theta";
    case Band::Alpha: return "Alpha";
    case Band::LowerBeta: return "LowerBeta";
    case Band::HigherBeta: return "HigherBeta";
    case Band::Broadband: return "Broadband";
  }
  throw InvariantError("unknown band");
}

std::optional<Band> parse_band(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c == '_' || c == '-' || c == ' ') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  for (Band b : kAllBands) {
    std::string candidate;
    for (char c : band_name(b)) {
      candidate.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (candidate == key) return b;
  }
  return std::nullopt;
}

BandDefinition canonical_band(Band band) {
  switch (band) {
    case Band::Delta: return {band, 0.5, 4.0};
    case Band::Theta: return {band, 4.0, 8.0};
    case Band::Alpha: return {band, 8.0, 13.0};
    case Band::LowerBeta: return {band, 13.0, 22.0};
    case Band::HigherBeta: return {band, 22.0, 30.0};
    case Band::Broadband: return {band, 0.5, 40.0};
  }
  throw InvariantError("unknown band");
}

void validate_band(const BandDefinition& band, double fs) {
  if (!(band.f_lo > 0.0 && band.f_lo < band.f_hi)) {
    throw ConfigError(std::string(band.name()) + ": band edges must satisfy 0 < f_lo < f_hi");
  }
  if (!(band.f_hi < fs / 2.0)) {
    throw ConfigError(std::string(band.name()) + ": upper edge " + std::to_string(band.f_hi) +
                      " Hz violates Nyquist for fs " + std::to_string(fs) + " Hz");
  }
}

Recording bandpass(const Recording& recording, const BandDefinition& band) {
  validate_band(band, recording.fs());
  const auto filter = dsp::butterworth_bandpass(kButterworthOrder, band.f_lo, band.f_hi,
                                                recording.fs());
  const std::size_t pad = 3 * static_cast<std::size_t>(filter.order());
  RowMatrix out(recording.num_channels(), recording.num_samples());
  for (Eigen::Index c = 0; c < recording.num_channels(); ++c) {
    const double* row = recording.data().row(c).data();
    const auto y = dsp::filtfilt(
        filter, std::span<const double>(row, static_cast<std::size_t>(recording.num_samples())),
        pad);
    out.row(c) = Eigen::Map<const RowVector>(y.data(), static_cast<Eigen::Index>(y.size()));
  }
  return Recording(recording.channels(), recording.fs(), std::move(out));
}

Segmentation segment(const Recording& recording, double window_s, Band band,
                     std::string source_file) {
  const double exact = window_s * recording.fs();
  const double rounded = std::round(exact);
  if (!(window_s > 0.0) || std::abs(exact - rounded) > 1e-9 || rounded < 1.0) {
    throw ConfigError("window length times sampling rate must be a positive integer");
  }
  const auto length = static_cast<Eigen::Index>(rounded);
  Segmentation out;
  const Eigen::Index count = recording.num_samples() / length;
  out.too_short = count == 0;
  out.windows.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index k = 0; k < count; ++k) {
    WindowSegment w{band, static_cast<std::size_t>(k), recording, length, 0, source_file};
    out.windows.push_back(std::move(w));
  }
  return out;
}

std::vector<WindowSegment> label_windows(std::vector<WindowSegment> segments,
                                         const std::vector<SeizureAnnotation>& annotations) {
  for (auto& w : segments) {
    const double fs = w.source.fs();
    const auto first = static_cast<long long>(w.first_sample());
    const auto last = first + static_cast<long long>(w.length) - 1;
    w.label = 0;
    for (const auto& a : annotations) {
      const auto n_s = static_cast<long long>(std::floor(a.t_s * fs));
      const auto n_e = static_cast<long long>(std::floor(a.t_e * fs));
      if (first <= n_e && n_s <= last) {
        w.label = 1;
        break;
      }
    }
  }
  return segments;
}

std::vector<WindowSegment> extract_ictal_only(const std::vector<WindowSegment>& segments) {
  std::vector<WindowSegment> out;
  std::copy_if(segments.begin(), segments.end(), std::back_inserter(out),
               [](const WindowSegment& w) { return w.label == 1; });
  return out;
}

}  // namespace eegcn
