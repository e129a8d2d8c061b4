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

#include "eegcn/butterworth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eegcn/errors.hpp"

namespace eegcn::dsp {

using cd = std::complex<double>;

std::complex<double> SosFilter::response(double f_hz, double fs) const {
  const cd z1 = std::polar(1.0, -2.0 * std::numbers::pi * f_hz / fs);  // z^-1
  const cd z2 = z1 * z1;
  cd h(1.0, 0.0);
  for (const auto& s : sections) {
    h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
  }
  return h;
}

SosFilter butterworth_bandpass(int prototype_order, double f_lo, double f_hi, double fs) {
  if (prototype_order < 1) throw ConfigError("filter order must be >= 1");
  if (!(f_lo > 0.0 && f_lo < f_hi && f_hi < fs / 2.0)) {
    throw ConfigError("band-pass edges must satisfy 0 < f_lo < f_hi < fs/2");
  }
  const double fs2 = 2.0 * fs;
  const double w_lo = fs2 * std::tan(std::numbers::pi * f_lo / fs);
  const double w_hi = fs2 * std::tan(std::numbers::pi * f_hi / fs);
  const double bw = w_hi - w_lo;
  const double w0_sq = w_lo * w_hi;

  SosFilter filter;
  const int n = prototype_order;
  for (int k = 0; k < n; ++k) {
    // Left-half-plane prototype pole, then its two band-pass images
    // s^2 - p*bw*s + w0^2 = 0.
    const cd p = std::polar(1.0, std::numbers::pi * (2.0 * k + n + 1) / (2.0 * n));
    const cd pb = p * bw;
    const cd disc = std::sqrt(pb * pb - 4.0 * w0_sq);
    for (const cd s : {(pb + disc) / 2.0, (pb - disc) / 2.0}) {
      if (s.imag() < 0.0) continue;  // keep one of each conjugate pair
      const cd z = (fs2 + s) / (fs2 - s);
      Biquad q;
      // Each section carries one zero at z = 1 and one at z = -1.
      q.b0 = 1.0;
      q.b1 = 0.0;
      q.b2 = -1.0;
      q.a1 = -2.0 * z.real();
      q.a2 = std::norm(z);
      filter.sections.push_back(q);
    }
  }
  if (static_cast<int>(filter.sections.size()) != n) {
    throw InvariantError("band-pass pole pairing failed");
  }

  // Normalize to unit gain at the digital image of the analog centre.
  const double f_centre = std::atan(std::sqrt(w0_sq) / fs2) * fs / std::numbers::pi;
  const double gain = std::abs(filter.response(f_centre, fs));
  const double per_section = std::pow(gain, -1.0 / n);
  for (auto& q : filter.sections) {
    q.b0 *= per_section;
    q.b1 *= per_section;
    q.b2 *= per_section;
  }
  return filter;
}

namespace {

struct SectionState {
  double z1 = 0.0;
  double z2 = 0.0;
};

// Transposed direct form II, in place.
void run(const SosFilter& filter, std::vector<SectionState> state, std::vector<double>& x) {
  for (std::size_t s = 0; s < filter.sections.size(); ++s) {
    const Biquad& q = filter.sections[s];
    double z1 = state[s].z1;
    double z2 = state[s].z2;
    for (double& v : x) {
      const double in = v;
      const double out = q.b0 * in + z1;
      z1 = q.b1 * in - q.a1 * out + z2;
      z2 = q.b2 * in - q.a2 * out;
      v = out;
    }
  }
}

// Steady state of each section for a unit step applied to the cascade.
std::vector<SectionState> step_steady_state(const SosFilter& filter) {
  std::vector<SectionState> zi(filter.sections.size());
  double input = 1.0;
  for (std::size_t s = 0; s < filter.sections.size(); ++s) {
    const Biquad& q = filter.sections[s];
    const double dc = (q.b0 + q.b1 + q.b2) / (1.0 + q.a1 + q.a2);
    const double y = dc * input;
    zi[s].z2 = q.b2 * input - q.a2 * y;
    zi[s].z1 = y - q.b0 * input;
    input = y;
  }
  return zi;
}

std::vector<SectionState> scaled(std::vector<SectionState> zi, double k) {
  for (auto& s : zi) {
    s.z1 *= k;
    s.z2 *= k;
  }
  return zi;
}

}  // namespace

std::vector<double> sosfilt(const SosFilter& filter, std::span<const double> x) {
  std::vector<double> y(x.begin(), x.end());
  run(filter, std::vector<SectionState>(filter.sections.size()), y);
  return y;
}

std::vector<double> filtfilt(const SosFilter& filter, std::span<const double> x,
                             std::size_t pad) {
  const std::size_t n = x.size();
  if (n <= pad) {
    throw DataError("signal of " + std::to_string(n) + " samples is too short for " +
                    std::to_string(pad) + " samples of edge padding");
  }
  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) ext.push_back(x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= pad; ++i) ext.push_back(x[n - 1 - i]);

  const auto zi = step_steady_state(filter);
  run(filter, scaled(zi, ext.front()), ext);
  std::reverse(ext.begin(), ext.end());
  run(filter, scaled(zi, ext.front()), ext);
  std::reverse(ext.begin(), ext.end());
  return std::vector<double>(ext.begin() + static_cast<std::ptrdiff_t>(pad),
                             ext.begin() + static_cast<std::ptrdiff_t>(pad + n));
}

}  // namespace eegcn::dsp
