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

#ifndef EEGCN_EXPERIMENT_HPP_
#define EEGCN_EXPERIMENT_HPP_

#include <cstdint>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "eegcn/eval.hpp"
#include "eegcn/features.hpp"
#include "eegcn/gcn.hpp"
#include "eegcn/graphs.hpp"
#include "eegcn/preprocess.hpp"
#include "eegcn/signal_io.hpp"

namespace eegcn {

// Whole lines only, so concurrent band jobs never interleave mid-line.
class Console {
 public:
  explicit Console(std::ostream* out = nullptr) : out_(out) {}
  void info(std::string_view message);
  void warn(std::string_view message);

 private:
  std::ostream* out_;
  std::mutex mu_;
};

struct SynthConfig {
  double duration_s = 600.0;
  double fs = 256.0;
  int channels = 23;
  int seizures = 5;
  double min_len_s = 10.0;
  double max_len_s = 60.0;
  double min_gap_s = 30.0;
  std::vector<double> burst_hz = {3.0, 20.0};
  double amplitude_ratio = 5.0;
  double background_rms_uv = 20.0;
  std::uint64_t seed = 0;
  std::string file_id = "synthetic.edf";
};

struct ExperimentConfig {
  // [experiment]
  std::string output_dir = "results";
  std::string run_id = "run";
  std::uint64_t seed = 0;
  int jobs = 1;
  // [data]
  std::string data_dir = "data";
  std::string annotations;  // defaults to <data_dir>/annotations.csv
  bool synthetic = false;
  // [synth]
  SynthConfig synth;
  // [preprocess]
  std::vector<Band> bands{kAllBands.begin(), kAllBands.end()};
  double window_s = 6.0;
  std::map<Band, BandDefinition> band_definitions;  // every band, canonical unless overridden
  // [balance]
  std::size_t smote_k = kDefaultSmoteK;
  // [gcn]
  GcnConfig gcn;
  // [eval]
  double train_fraction = 0.8;
  int folds = 5;
  int repeats = 10;

  ExperimentConfig();

  std::string annotations_path() const;
  std::string run_dir() const;
  BandDefinition band(Band b) const { return band_definitions.at(b); }
  // Throws ConfigError. With check_paths, the data directory (and the
  // annotation file, outside synthetic mode) must exist.
  void validate(bool check_paths = false) const;
};

// INI text with [experiment] [data] [synth] [preprocess] [balance] [gcn]
// [eval] sections. `overrides` are "section.key=value" strings applied on
// top. Unknown sections or keys are a ConfigError.
ExperimentConfig parse_config(std::string_view ini_text,
                              const std::vector<std::string>& overrides = {});
ExperimentConfig load_config(const std::string& path,
                             const std::vector<std::string>& overrides = {});
// Complete snapshot; parse_config(format_config(c)) reproduces c.
std::string format_config(const ExperimentConfig& config);

// --- stages --------------------------------------------------------------------

struct SynthOutputs {
  std::string edf_path;
  std::string annotations_path;
  std::vector<SeizureAnnotation> annotations;
};
SynthesisSpec synthesis_spec(const ExperimentConfig& config);
SynthOutputs cmd_synth(const ExperimentConfig& config, Console& console);

// Features of every complete window of one recording in one band.
std::vector<SegmentFeatureMatrix> recording_features(const Recording& recording,
                                                     const std::vector<SeizureAnnotation>& annotations,
                                                     const BandDefinition& band, double window_s,
                                                     const std::string& source_file);

struct FileManifestRow {
  std::string source_file;
  Band band = Band::Broadband;
  std::size_t windows = 0;
  std::size_t seizure_windows = 0;
  std::string status = "ok";  // or the reason the file was skipped
};

struct FeatureOutputs {
  std::string dir;
  std::map<Band, std::string> csv_paths;
  std::vector<FileManifestRow> manifest;
};
// Writes <run_dir>/features/<Band>.csv and manifest.csv. In synthetic mode the
// recording is synthesized first when it is not already on disk.
FeatureOutputs cmd_features(const ExperimentConfig& config, Console& console);

// Cross-validation of one band at one base seed. Repeat r of a run uses
// base seed config.seed + r; repeat 0 is the run's reported CV.
CvReport band_cross_validation(const FeatureDataset& dataset, const EegGraph& graph,
                               const ExperimentConfig& config, Band band, std::uint64_t seed,
                               Console* console = nullptr);

struct BandOutcome {
  Band band = Band::Broadband;
  bool ok = false;
  std::string error;
  int error_code = 0;  // exit code class of the error
  std::string dir;
  Aggregate cv;
  MetricsReport holdout;
  RepeatReport repeats;
};

struct RunOutputs {
  std::string dir;
  std::vector<BandOutcome> bands;
};
// Per band: stratified split, SMOTE, train, evaluate, checkpoint, k-fold CV
// and repeats. A failing band is recorded and the others continue.
RunOutputs cmd_run(const ExperimentConfig& config, Console& console);

struct WindowPrediction {
  std::size_t window_k = 0;
  double start_s = 0.0;
  double end_s = 0.0;
  double p_seizure = 0.0;
  int label = 0;
};
struct PredictRequest {
  std::string checkpoint;
  std::string edf;
  std::string band;
  std::string output;  // CSV path; empty to skip writing
};
std::vector<WindowPrediction> cmd_predict(const ExperimentConfig& config,
                                          const PredictRequest& request, Console& console);
std::string predictions_csv(const std::vector<WindowPrediction>& predictions);

// Builds the montage graph and checks it; writes the edge list when
// `edges_out` is non-empty.
GraphReport cmd_validate_graph(const std::string& edges_out, Console& console);

}  // namespace eegcn

#endif  // EEGCN_EXPERIMENT_HPP_
