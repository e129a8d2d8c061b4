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

#ifndef EEGCN_BUTTERWORTH_HPP_
#define EEGCN_BUTTERWORTH_HPP_

#include <complex>
#include <span>
#include <vector>

namespace eegcn::dsp {

// One second-order section, a0 normalized to 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

// Cascade of second-order sections.
struct SosFilter {
  std::vector<Biquad> sections;

  int order() const { return 2 * static_cast<int>(sections.size()); }
  std::complex<double> response(double f_hz, double fs) const;
};

// Digital Butterworth band-pass from an analog prototype of order
// `prototype_order` (the resulting filter has twice that many poles), via
// pre-warped bilinear transform. Unity gain at the geometric band centre.
SosFilter butterworth_bandpass(int prototype_order, double f_lo, double f_hi, double fs);

// Single forward pass with zero initial state.
std::vector<double> sosfilt(const SosFilter& filter, std::span<const double> x);

// Zero-phase filtering: even-reflection padding of `pad` samples on both ends,
// forward pass, backward pass, trim. Each pass starts from the step-response
// steady state scaled by the first sample. Requires x.size() > pad.
std::vector<double> filtfilt(const SosFilter& filter, std::span<const double> x,
                             std::size_t pad);

}  // namespace eegcn::dsp

#endif  // EEGCN_BUTTERWORTH_HPP_
