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

#include "eegcn/signal_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "eegcn/csv.hpp"
#include "eegcn/errors.hpp"
#include "eegcn/graphs.hpp"

namespace eegcn {

namespace {

constexpr std::size_t kFixedHeaderBytes = 256;
constexpr std::size_t kSignalHeaderBytes = 256;
constexpr char kAnnotationLabel[] = "EDF Annotations";

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

}  // namespace

std::optional<ChannelLabel> ChannelLabel::try_parse(std::string_view raw) {
  std::string_view label = csv::trim(raw);
  std::size_t dash = label.find('-');
  if (dash == std::string_view::npos || dash == 0) return std::nullopt;
  ChannelLabel out;
  out.raw = std::string(label);
  out.electrode_a = upper(label.substr(0, dash));
  std::string_view rest = label.substr(dash + 1);
  std::size_t last = rest.rfind('-');
  if (last != std::string_view::npos && all_digits(rest.substr(last + 1))) {
    out.disambiguator = std::string(rest.substr(last + 1));
    rest = rest.substr(0, last);
  }
  out.electrode_b = upper(rest);
  if (out.electrode_b.empty() || out.electrode_b.find('-') != std::string::npos) {
    return std::nullopt;
  }
  return out;
}

ChannelLabel ChannelLabel::parse(std::string_view raw) {
  auto label = try_parse(raw);
  if (!label) throw DataError("not a bipolar channel label: '" + std::string(raw) + "'");
  return *label;
}

std::string ChannelLabel::key() const { return upper(csv::trim(raw)); }

bool ChannelLabel::shares_electrode(const ChannelLabel& other) const {
  if (!bipolar() || !other.bipolar()) return false;
  return electrode_a == other.electrode_a || electrode_a == other.electrode_b ||
         electrode_b == other.electrode_a || electrode_b == other.electrode_b;
}

Recording::Recording(std::vector<ChannelLabel> channels, double fs, RowMatrix data)
    : channels_(std::move(channels)),
      fs_(fs),
      data_(std::make_shared<const RowMatrix>(std::move(data))) {
  if (!(fs_ > 0.0) || !std::isfinite(fs_)) {
    throw DataError("sampling rate must be positive");
  }
  if (static_cast<Eigen::Index>(channels_.size()) != data_->rows()) {
    throw DataError("channel label count " + std::to_string(channels_.size()) +
                    " does not match data rows " + std::to_string(data_->rows()));
  }
}

std::optional<std::size_t> Recording::find_channel(std::string_view label) const {
  const std::string wanted = upper(csv::trim(label));
  for (std::size_t i = 0; i < channels_.size(); ++i) {
    if (channels_[i].key() == wanted) return i;
  }
  return std::nullopt;
}

Recording select_channels(const Recording& recording,
                          const std::vector<ChannelLabel>& montage) {
  std::vector<std::size_t> rows;
  std::string missing;
  for (const auto& ch : montage) {
    auto idx = recording.find_channel(ch.raw);
    if (!idx) {
      missing += (missing.empty() ? "" : ", ") + ch.raw;
      continue;
    }
    rows.push_back(*idx);
  }
  if (!missing.empty()) throw DataError("missing montage channels: " + missing);

  bool identity = rows.size() == recording.channels().size();
  for (std::size_t i = 0; identity && i < rows.size(); ++i) identity = rows[i] == i;
  if (identity) return recording;

  RowMatrix data(static_cast<Eigen::Index>(rows.size()), recording.num_samples());
  std::vector<ChannelLabel> labels;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    data.row(static_cast<Eigen::Index>(i)) =
        recording.data().row(static_cast<Eigen::Index>(rows[i]));
    labels.push_back(recording.channels()[rows[i]]);
  }
  return Recording(std::move(labels), recording.fs(), std::move(data));
}

// --- EDF -------------------------------------------------------------------

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view field(std::size_t offset, std::size_t width) const {
    if (offset + width > bytes_.size()) {
      throw ParseError("truncated EDF header", bytes_.size());
    }
    return bytes_.substr(offset, width);
  }

  std::string text(std::size_t offset, std::size_t width) const {
    return std::string(csv::trim(field(offset, width)));
  }

  double number(std::size_t offset, std::size_t width, const char* what) const {
    auto v = csv::parse_double(field(offset, width));
    if (!v || !std::isfinite(*v)) {
      throw ParseError(std::string("bad numeric field '") + what + "'", offset);
    }
    return *v;
  }

  long long integer(std::size_t offset, std::size_t width, const char* what) const {
    auto v = csv::parse_int(field(offset, width));
    if (!v) throw ParseError(std::string("bad integer field '") + what + "'", offset);
    return *v;
  }

 private:
  std::string_view bytes_;
};

std::size_t record_bytes(const EdfHeader& header) {
  std::size_t total = 0;
  for (const auto& s : header.signals) total += 2 * static_cast<std::size_t>(s.samples_per_record);
  return total;
}

}  // namespace

double digital_to_physical(int digital, const EdfSignalHeader& s) {
  return s.physical_min + (static_cast<double>(digital) - s.digital_min) *
                              (s.physical_max - s.physical_min) /
                              (static_cast<double>(s.digital_max) - s.digital_min);
}

EdfHeader parse_edf_header(std::string_view bytes) {
  if (bytes.size() < kFixedHeaderBytes) {
    throw ParseError("truncated EDF fixed header", bytes.size());
  }
  HeaderReader r(bytes);
  EdfHeader h;
  h.patient = r.text(8, 80);
  h.recording = r.text(88, 80);
  h.start_date = r.text(168, 8);
  h.start_time = r.text(176, 8);
  h.header_bytes = static_cast<int>(r.integer(184, 8, "header bytes"));
  h.num_records = r.integer(236, 8, "number of data records");
  h.record_duration_s = r.number(244, 8, "record duration");
  const long long ns = r.integer(252, 4, "number of signals");
  if (ns < 1) throw ParseError("EDF declares no signals", 252);
  if (!(h.record_duration_s > 0.0)) throw ParseError("record duration must be positive", 244);

  const std::size_t n = static_cast<std::size_t>(ns);
  const std::size_t expected = kFixedHeaderBytes + n * kSignalHeaderBytes;
  if (static_cast<std::size_t>(h.header_bytes) != expected) {
    throw ParseError("header byte count " + std::to_string(h.header_bytes) +
                         " inconsistent with " + std::to_string(n) + " signals",
                     184);
  }
  if (bytes.size() < expected) throw ParseError("truncated EDF signal headers", bytes.size());

  const std::size_t base = kFixedHeaderBytes;
  h.signals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = h.signals[i];
    s.label = r.text(base + i * 16, 16);
    s.physical_dimension = r.text(base + n * 96 + i * 8, 8);
    s.physical_min = r.number(base + n * 104 + i * 8, 8, "physical minimum");
    s.physical_max = r.number(base + n * 112 + i * 8, 8, "physical maximum");
    const std::size_t dmin_at = base + n * 120 + i * 8;
    const std::size_t dmax_at = base + n * 128 + i * 8;
    s.digital_min = static_cast<int>(r.integer(dmin_at, 8, "digital minimum"));
    s.digital_max = static_cast<int>(r.integer(dmax_at, 8, "digital maximum"));
    const std::size_t spr_at = base + n * 216 + i * 8;
    s.samples_per_record = static_cast<int>(r.integer(spr_at, 8, "samples per record"));
    if (s.label == kAnnotationLabel) continue;
    if (s.digital_max <= s.digital_min) {
      throw ParseError("digital maximum <= digital minimum for signal '" + s.label + "'",
                       dmax_at);
    }
    if (s.samples_per_record < 1) {
      throw ParseError("non-positive samples per record for signal '" + s.label + "'",
                       spr_at);
    }
  }
  return h;
}

Recording parse_edf(std::string_view bytes) {
  EdfHeader h = parse_edf_header(bytes);
  const std::size_t rec_bytes = record_bytes(h);
  const std::size_t data_start = static_cast<std::size_t>(h.header_bytes);
  if (rec_bytes == 0) throw ParseError("EDF data record has zero size", 256);

  std::size_t n_records = 0;
  if (h.num_records < 0) {
    n_records = (bytes.size() - data_start) / rec_bytes;
  } else {
    n_records = static_cast<std::size_t>(h.num_records);
    if (data_start + n_records * rec_bytes > bytes.size()) {
      throw ParseError("EDF declares " + std::to_string(n_records) + " records of " +
                           std::to_string(rec_bytes) + " bytes but file holds " +
                           std::to_string(bytes.size() - data_start),
                       bytes.size());
    }
  }

  std::vector<std::size_t> kept;
  int spr = 0;
  for (std::size_t i = 0; i < h.signals.size(); ++i) {
    if (h.signals[i].label == kAnnotationLabel) continue;
    if (spr == 0) spr = h.signals[i].samples_per_record;
    if (h.signals[i].samples_per_record != spr) {
      throw DataError("signals with differing sample rates are not supported ('" +
                      h.signals[i].label + "')");
    }
    kept.push_back(i);
  }
  if (kept.empty()) throw DataError("EDF contains only annotation signals");

  // Byte offset of each signal inside one data record.
  std::vector<std::size_t> offset(h.signals.size(), 0);
  for (std::size_t i = 1; i < h.signals.size(); ++i) {
    offset[i] = offset[i - 1] + 2 * static_cast<std::size_t>(h.signals[i - 1].samples_per_record);
  }

  const auto n_samples = static_cast<Eigen::Index>(n_records * static_cast<std::size_t>(spr));
  RowMatrix data(static_cast<Eigen::Index>(kept.size()), n_samples);
  std::vector<ChannelLabel> labels;
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const auto& sig = h.signals[kept[c]];
    auto parsed = ChannelLabel::try_parse(sig.label);
    labels.push_back(parsed ? *parsed : ChannelLabel{sig.label, upper(sig.label), "", ""});
    const double scale = (sig.physical_max - sig.physical_min) /
                         (static_cast<double>(sig.digital_max) - sig.digital_min);
    for (std::size_t rec = 0; rec < n_records; ++rec) {
      const char* p = bytes.data() + data_start + rec * rec_bytes + offset[kept[c]];
      for (int k = 0; k < spr; ++k) {
        const auto lo = static_cast<unsigned char>(p[2 * k]);
        const auto hi = static_cast<unsigned char>(p[2 * k + 1]);
        const auto dig = static_cast<std::int16_t>(static_cast<std::uint16_t>(lo | (hi << 8)));
        data(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(rec * spr + k)) =
            sig.physical_min + (static_cast<double>(dig) - sig.digital_min) * scale;
      }
    }
  }
  return Recording(std::move(labels), spr / h.record_duration_s, std::move(data));
}

Recording read_edf_file(const std::string& path) {
  const std::string bytes = csv::read_file(path);
  return parse_edf(bytes);
}

namespace {

void put_field(std::string& out, std::string_view value, std::size_t width) {
  if (value.size() > width) {
    throw InvariantError("EDF field '" + std::string(value) + "' exceeds " +
                         std::to_string(width) + " characters");
  }
  out.append(value);
  out.append(width - value.size(), ' ');
}

// Formats `v` in at most 8 characters, rounding outward (down for a lower
// bound, up for an upper bound) so the written range still covers the data.
std::string edf_bound(double v, bool upper_bound) {
  for (int decimals = 6; decimals >= 0; --decimals) {
    const double scale = std::pow(10.0, decimals);
    const double rounded = upper_bound ? std::ceil(v * scale) / scale
                                       : std::floor(v * scale) / scale;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, rounded);
    std::string s(buf);
    if (s.starts_with("-") && std::stod(s) == 0.0) s = s.substr(1);
    if (s.size() <= 8) return s;
  }
  throw DataError("physical value out of EDF range: " + csv::format_double(v));
}

}  // namespace

std::string write_edf(const Recording& recording, std::string_view patient,
                      std::string_view recording_id) {
  const double fs = recording.fs();
  const auto spr = static_cast<long long>(std::llround(fs));
  if (std::abs(fs - static_cast<double>(spr)) > 1e-9) {
    throw ConfigError("write_edf requires an integral sampling rate");
  }
  const Eigen::Index n_samples = recording.num_samples();
  if (n_samples % spr != 0) {
    throw ConfigError("write_edf requires a whole number of seconds");
  }
  const auto n_records = n_samples / spr;
  const auto ns = static_cast<std::size_t>(recording.num_channels());

  std::vector<std::string> pmin(ns), pmax(ns);
  std::vector<double> lo(ns), hi(ns);
  for (std::size_t c = 0; c < ns; ++c) {
    const auto row = recording.data().row(static_cast<Eigen::Index>(c));
    double mn = n_samples ? row.minCoeff() : 0.0;
    double mx = n_samples ? row.maxCoeff() : 0.0;
    if (!(mx > mn)) {
      mn -= 1.0;
      mx += 1.0;
    }
    pmin[c] = edf_bound(mn, false);
    pmax[c] = edf_bound(mx, true);
    lo[c] = std::stod(pmin[c]);
    hi[c] = std::stod(pmax[c]);
  }

  std::string out;
  out.reserve(kFixedHeaderBytes + ns * kSignalHeaderBytes +
              static_cast<std::size_t>(n_samples) * ns * 2);
  put_field(out, "0", 8);
  put_field(out, patient, 80);
  put_field(out, recording_id, 80);
  put_field(out, "01.01.00", 8);
  put_field(out, "00.00.00", 8);
  put_field(out, std::to_string(kFixedHeaderBytes + ns * kSignalHeaderBytes), 8);
  put_field(out, "", 44);
  put_field(out, std::to_string(n_records), 8);
  put_field(out, "1", 8);
  put_field(out, std::to_string(ns), 4);
  for (std::size_t c = 0; c < ns; ++c) put_field(out, recording.channels()[c].raw, 16);
  for (std::size_t c = 0; c < ns; ++c) put_field(out, "AgAgCl electrode", 80);
  for (std::size_t c = 0; c < ns; ++c) put_field(out, "uV", 8);
  for (std::size_t c = 0; c < ns; ++c) put_field(out, pmin[c], 8);
  for (std::size_t c = 0; c < ns; ++c) put_field(out, pmax[c], 8);
  for (std::size_t c = 0; c < ns; ++c) put_field(out, "-32768", 8);
  for (std::size_t c = 0; c < ns; ++c) put_field(out, "32767", 8);
  for (std::size_t c = 0; c < ns; ++c) put_field(out, "", 80);
  for (std::size_t c = 0; c < ns; ++c) put_field(out, std::to_string(spr), 8);
  for (std::size_t c = 0; c < ns; ++c) put_field(out, "", 32);

  for (Eigen::Index rec = 0; rec < n_records; ++rec) {
    for (std::size_t c = 0; c < ns; ++c) {
      const double scale = 65535.0 / (hi[c] - lo[c]);
      for (Eigen::Index k = 0; k < spr; ++k) {
        const double v = recording.data()(static_cast<Eigen::Index>(c), rec * spr + k);
        double d = std::round((v - lo[c]) * scale - 32768.0);
        d = std::clamp(d, -32768.0, 32767.0);
        const auto u = static_cast<std::uint16_t>(static_cast<std::int16_t>(d));
        out.push_back(static_cast<char>(u & 0xFF));
        out.push_back(static_cast<char>(u >> 8));
      }
    }
  }
  return out;
}

// --- annotations -------------------------------------------------------------

std::vector<SeizureAnnotation> AnnotationSet::for_file(std::string_view file_id) const {
  std::vector<SeizureAnnotation> out;
  for (const auto& a : annotations) {
    if (a.file_id == file_id) out.push_back(a);
  }
  return out;
}

AnnotationSet load_annotations(std::string_view text) {
  AnnotationSet out;
  const auto rows = csv::lines(text);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string_view row = csv::trim(rows[i]);
    if (i == 0 && row.size() >= 3 && row.substr(0, 3) == "\xEF\xBB\xBF") row.remove_prefix(3);
    if (row.empty()) continue;
    const auto fields = csv::split(row);
    const std::size_t line = i + 1;
    if (fields.size() != 3) {
      throw ParseError("annotation row must have 3 fields, got " +
                           std::to_string(fields.size()), line, "line");
    }
    auto start = csv::parse_double(fields[1]);
    auto end = csv::parse_double(fields[2]);
    if (!start || !end) {
      if (out.annotations.empty() && out.rejected.empty() && i == 0) continue;  // header
      throw ParseError("non-numeric annotation time in row '" + std::string(row) + "'", line, "line");
    }
    SeizureAnnotation a{std::string(csv::trim(fields[0])), *start, *end};
    if (!std::isfinite(a.t_s) || !std::isfinite(a.t_e)) {
      out.rejected.push_back({line, std::string(row), "non-finite time"});
    } else if (a.t_s < 0.0) {
      out.rejected.push_back({line, std::string(row), "negative start time"});
    } else if (a.t_e <= a.t_s) {
      out.rejected.push_back({line, std::string(row),
                              a.t_e == a.t_s ? "zero-length interval"
                                             : "end precedes start"});
    } else {
      out.annotations.push_back(std::move(a));
    }
  }
  return out;
}

std::string format_annotations(const std::vector<SeizureAnnotation>& annotations) {
  std::string out = "file_id,start_s,end_s\n";
  for (const auto& a : annotations) {
    out += a.file_id + "," + csv::format_double(a.t_s) + "," + csv::format_double(a.t_e) + "\n";
  }
  return out;
}

// --- synthesis ---------------------------------------------------------------

std::vector<ChannelLabel> synthetic_channel_labels(int n) {
  if (n == static_cast<int>(kMontageSize)) return standard_montage();
  std::vector<ChannelLabel> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(ChannelLabel::parse("E" + std::to_string(i + 1) + "-E" + std::to_string(i + 2)));
  }
  return out;
}

namespace {

void validate_spec(const SynthesisSpec& spec) {
  if (spec.n_channels < 1) throw ConfigError("n_channels must be >= 1");
  if (!(spec.fs > 0.0)) throw ConfigError("fs must be positive");
  if (!(spec.duration_s > 0.0)) throw ConfigError("duration_s must be positive");
  if (!(spec.burst_amplitude_ratio > 0.0)) throw ConfigError("burst_amplitude_ratio must be positive");
  for (double f : spec.burst_frequencies_hz) {
    if (!(f > 0.0)) throw ConfigError("burst frequencies must be positive");
    if (spec.fs < 2.0 * f) {
      throw ConfigError("fs " + csv::format_double(spec.fs) + " aliases burst frequency " +
                        csv::format_double(f));
    }
  }
  std::vector<Interval> sorted = spec.seizure_intervals;
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval& a, const Interval& b) { return a.t_s < b.t_s; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& iv = sorted[i];
    if (!(iv.t_s >= 0.0 && iv.t_e > iv.t_s && iv.t_e <= spec.duration_s)) {
      throw ConfigError("seizure interval [" + csv::format_double(iv.t_s) + ", " +
                        csv::format_double(iv.t_e) + "] outside recording");
    }
    if (i > 0 && iv.t_s < sorted[i - 1].t_e) {
      throw ConfigError("seizure intervals overlap");
    }
  }
}

// Kellet's pink-noise filter: a sum of first-order sections approximating a
// -10 dB/decade slope over the audible range of the unit-rate signal.
class PinkFilter {
 public:
  double operator()(double white) {
    b_[0] = 0.99886 * b_[0] + white * 0.0555179;
    b_[1] = 0.99332 * b_[1] + white * 0.0750759;
    b_[2] = 0.96900 * b_[2] + white * 0.1538520;
    b_[3] = 0.86650 * b_[3] + white * 0.3104856;
    b_[4] = 0.55000 * b_[4] + white * 0.5329522;
    b_[5] = -0.7616 * b_[5] - white * 0.0168980;
    const double out = b_[0] + b_[1] + b_[2] + b_[3] + b_[4] + b_[5] + b_[6] + white * 0.5362;
    b_[6] = white * 0.115926;
    return out;
  }

 private:
  double b_[7] = {};
};

}  // namespace

SyntheticRecording synthesize_recording(const SynthesisSpec& spec) {
  validate_spec(spec);
  const auto n = static_cast<Eigen::Index>(std::floor(spec.duration_s * spec.fs + 1e-9));
  const Eigen::Index channels = spec.n_channels;
  RowMatrix data(channels, n);

  std::mt19937_64 rng(spec.noise_seed);
  std::normal_distribution<double> white(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  constexpr int kBurnIn = 8192;

  std::vector<std::vector<double>> phases(static_cast<std::size_t>(channels));
  for (Eigen::Index c = 0; c < channels; ++c) {
    PinkFilter pink;
    for (int i = 0; i < kBurnIn; ++i) pink(white(rng));
    auto row = data.row(c);
    for (Eigen::Index i = 0; i < n; ++i) row(i) = pink(white(rng));
    const double mean = row.mean();
    row.array() -= mean;
    const double rms = n > 0 ? std::sqrt(row.squaredNorm() / static_cast<double>(n)) : 0.0;
    if (rms > 0.0) row *= spec.background_rms_uv / rms;
    for (std::size_t f = 0; f < spec.burst_frequencies_hz.size(); ++f) {
      phases[static_cast<std::size_t>(c)].push_back(phase(rng));
    }
  }

  const double amplitude = spec.burst_amplitude_ratio * spec.background_rms_uv;
  std::vector<SeizureAnnotation> annotations;
  for (const auto& iv : spec.seizure_intervals) {
    annotations.push_back({spec.file_id, iv.t_s, iv.t_e});
    const auto first = static_cast<Eigen::Index>(std::floor(iv.t_s * spec.fs));
    const auto last = std::min<Eigen::Index>(
        static_cast<Eigen::Index>(std::floor(iv.t_e * spec.fs)), n - 1);
    for (Eigen::Index c = 0; c < channels; ++c) {
      for (std::size_t f = 0; f < spec.burst_frequencies_hz.size(); ++f) {
        const double w = 2.0 * std::numbers::pi * spec.burst_frequencies_hz[f] / spec.fs;
        const double ph = phases[static_cast<std::size_t>(c)][f];
        for (Eigen::Index i = first; i <= last; ++i) {
          data(c, i) += amplitude * std::sin(w * static_cast<double>(i) + ph);
        }
      }
    }
  }
  return {Recording(synthetic_channel_labels(spec.n_channels), spec.fs, std::move(data)),
          std::move(annotations)};
}

std::vector<Interval> random_seizure_intervals(double duration_s, int count, double min_len,
                                               double max_len, double min_gap,
                                               std::uint64_t seed) {
  if (count < 0 || !(min_len > 0.0) || max_len < min_len || min_gap < 0.0) {
    throw ConfigError("invalid seizure interval parameters");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> length(min_len, max_len);
  auto centis = [](double v) { return std::floor(v * 100.0) / 100.0; };

  std::vector<double> lengths;
  double total = 0.0;
  for (int i = 0; i < count; ++i) {
    lengths.push_back(centis(length(rng)));
    total += lengths.back();
  }
  const double slack = duration_s - total - min_gap * (count + 1);
  if (slack < 0.0) throw ConfigError("seizure intervals do not fit in the recording");

  std::uniform_real_distribution<double> offset(0.0, slack);
  std::vector<double> cuts;
  for (int i = 0; i < count; ++i) cuts.push_back(offset(rng));
  std::sort(cuts.begin(), cuts.end());

  std::vector<Interval> out;
  double consumed = 0.0;
  for (int i = 0; i < count; ++i) {
    const double start = centis(min_gap * (i + 1) + consumed + cuts[static_cast<std::size_t>(i)]);
    out.push_back({start, start + lengths[static_cast<std::size_t>(i)]});
    consumed += lengths[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace eegcn
