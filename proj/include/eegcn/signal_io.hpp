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

#ifndef EEGCN_SIGNAL_IO_HPP_
#define EEGCN_SIGNAL_IO_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eegcn/matrix.hpp"

namespace eegcn {

// A bipolar montage channel such as "FP1-F7". CHB-MIT repeats the T8-P8 pair
// as "T8-P8-0" / "T8-P8-1"; the numeric suffix is kept in `disambiguator` so
// the two remain distinct labels while sharing electrode names.
struct ChannelLabel {
  std::string raw;
  std::string electrode_a;
  std::string electrode_b;
  std::string disambiguator;

  // Throws DataError when `raw` is not of the form A-B[-n].
  static ChannelLabel parse(std::string_view raw);
  static std::optional<ChannelLabel> try_parse(std::string_view raw);

  // Uppercased, trimmed raw label used for matching.
  std::string key() const;
  bool bipolar() const { return !electrode_b.empty(); }
  bool shares_electrode(const ChannelLabel& other) const;

  friend bool operator==(const ChannelLabel&, const ChannelLabel&) = default;
};

// Multichannel EEG in physical units (microvolts). The sample matrix is
// shared and immutable, so copies are cheap and safe across threads.
class Recording {
 public:
  Recording(std::vector<ChannelLabel> channels, double fs, RowMatrix data);

  const std::vector<ChannelLabel>& channels() const { return channels_; }
  double fs() const { return fs_; }
  const RowMatrix& data() const { return *data_; }
  Eigen::Index num_channels() const { return data_->rows(); }
  Eigen::Index num_samples() const { return data_->cols(); }
  double duration_s() const { return static_cast<double>(num_samples()) / fs_; }

  std::optional<std::size_t> find_channel(std::string_view label) const;

 private:
  std::vector<ChannelLabel> channels_;
  double fs_;
  std::shared_ptr<const RowMatrix> data_;
};

// Returns a recording with exactly `montage`'s channels in montage order.
// Throws DataError naming every missing channel.
Recording select_channels(const Recording& recording,
                          const std::vector<ChannelLabel>& montage);

struct SeizureAnnotation {
  std::string file_id;
  double t_s = 0.0;
  double t_e = 0.0;

  friend bool operator==(const SeizureAnnotation&,
                         const SeizureAnnotation&) = default;
};

// --- EDF -------------------------------------------------------------------

struct EdfSignalHeader {
  std::string label;
  std::string physical_dimension;
  double physical_min = 0.0;
  double physical_max = 0.0;
  int digital_min = 0;
  int digital_max = 0;
  int samples_per_record = 0;
};

struct EdfHeader {
  std::string patient;
  std::string recording;
  std::string start_date;
  std::string start_time;
  int header_bytes = 0;
  long long num_records = 0;
  double record_duration_s = 0.0;
  std::vector<EdfSignalHeader> signals;
};

// Affine digital -> physical map of the EDF format.
double digital_to_physical(int digital, const EdfSignalHeader& signal);

EdfHeader parse_edf_header(std::string_view bytes);

// Parses a plain EDF file. Annotation pseudo-signals ("EDF Annotations") are
// skipped; every remaining signal must share one sample rate. Throws
// ParseError (with byte offset) on truncation or inconsistent headers.
Recording parse_edf(std::string_view bytes);
Recording read_edf_file(const std::string& path);

// Serializes to EDF with 1 s data records and a per-channel physical range
// covering the data, quantized to 16 bits. Requires an integral sample rate
// and a whole number of seconds.
std::string write_edf(const Recording& recording,
                      std::string_view patient = "X X X X",
                      std::string_view recording_id = "Startdate X X X X");

// --- annotations -------------------------------------------------------------

struct RejectedAnnotation {
  std::size_t line = 0;  // 1-based
  std::string text;
  std::string reason;
};

struct AnnotationSet {
  std::vector<SeizureAnnotation> annotations;
  std::vector<RejectedAnnotation> rejected;

  std::vector<SeizureAnnotation> for_file(std::string_view file_id) const;
};

// Parses `file_id,start_s,end_s` rows. A non-numeric first row is taken as a
// header; later non-numeric rows throw ParseError (position = line number).
// Rows with end <= start or start < 0 are rejected individually.
AnnotationSet load_annotations(std::string_view text);

std::string format_annotations(const std::vector<SeizureAnnotation>& annotations);

// --- synthesis ---------------------------------------------------------------

struct Interval {
  double t_s = 0.0;
  double t_e = 0.0;
};

struct SynthesisSpec {
  double duration_s = 600.0;
  double fs = 256.0;
  int n_channels = 23;
  std::vector<Interval> seizure_intervals;
  std::vector<double> burst_frequencies_hz = {3.0, 20.0};
  double burst_amplitude_ratio = 5.0;
  std::uint64_t noise_seed = 0;
  // Per-channel standard deviation of the background, in microvolts.
  double background_rms_uv = 20.0;
  std::string file_id = "synthetic.edf";
};

struct SyntheticRecording {
  Recording recording;
  std::vector<SeizureAnnotation> annotations;
};

// Pink (1/f) background per channel plus, inside each seizure interval,
// sinusoids at every burst frequency with amplitude ratio * background rms.
// Pure function of `spec`.
SyntheticRecording synthesize_recording(const SynthesisSpec& spec);

// Draws `count` disjoint intervals with lengths in [min_len, max_len] inside
// [0, duration_s], separated by at least `min_gap` seconds.
std::vector<Interval> random_seizure_intervals(double duration_s, int count,
                                               double min_len, double max_len,
                                               double min_gap,
                                               std::uint64_t seed);

// Channel labels used for synthetic recordings: the standard montage when
// n == 23, otherwise a generic chain "E1-E2", "E2-E3", ...
std::vector<ChannelLabel> synthetic_channel_labels(int n);

}  // namespace eegcn

#endif  // EEGCN_SIGNAL_IO_HPP_
