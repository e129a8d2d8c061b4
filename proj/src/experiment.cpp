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

#include "eegcn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <filesystem>
#include <functional>
#include <optional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "eegcn/checkpoint.hpp"
#include "eegcn/csv.hpp"
#include "eegcn/errors.hpp"
#include "eegcn/hash.hpp"

namespace eegcn {

namespace fs = std::filesystem;

void Console::info(std::string_view message) {
  std::lock_guard lock(mu_);
  std::ostream& os = out_ ? *out_ : std::clog;
  os << "[info] " << message << '\n';
  os.flush();
}

void Console::warn(std::string_view message) {
  std::lock_guard lock(mu_);
  std::ostream& os = out_ ? *out_ : std::clog;
  os << "[warn] " << message << '\n';
  os.flush();
}

// --- config ------------------------------------------------------------------------

namespace {

// Seed streams for derive_seed; indexed further by band.
enum SeedStream : std::uint64_t {
  kHoldoutSplit = 101,
  kHoldoutSmote = 102,
  kHoldoutInit = 103,
  kCvPlan = 104,
  kCvFolds = 105,
  kSynthNoise = 106,
};

std::uint64_t band_index(Band b) {
  return static_cast<std::uint64_t>(std::find(kAllBands.begin(), kAllBands.end(), b) -
                                    kAllBands.begin());
}

std::string config_key_name(Band b) {
  switch (b) {
    case Band::Delta: return "delta";
    case Band::Theta: return "theta";
    case Band::Alpha: return "alpha";
    case Band::LowerBeta: return "lower_beta";
    case Band::HigherBeta: return "higher_beta";
    case Band::Broadband: return "broadband";
  }
  throw InvariantError("unknown band");
}

[[noreturn]] void bad_value(const std::string& key, std::string_view value, const char* expected) {
  throw ConfigError(key + ": expected " + expected + ", got '" + std::string(value) + "'");
}

double to_double(const std::string& key, std::string_view v) {
  auto d = csv::parse_double(v);
  if (!d) bad_value(key, v, "a number");
  return *d;
}

int to_int(const std::string& key, std::string_view v) {
  auto i = csv::parse_int(v);
  if (!i || *i < std::numeric_limits<int>::min() || *i > std::numeric_limits<int>::max())
    bad_value(key, v, "an integer");
  return static_cast<int>(*i);
}

std::uint64_t to_u64(const std::string& key, std::string_view v) {
  v = csv::trim(v);
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    bad_value(key, v, "a non-negative integer");
  return out;
}

bool to_bool(const std::string& key, std::string_view v) {
  std::string s(csv::trim(v));
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  bad_value(key, v, "true or false");
}

std::vector<double> to_doubles(const std::string& key, std::string_view v) {
  std::vector<double> out;
  if (csv::trim(v).empty()) return out;
  for (auto f : csv::split(v)) out.push_back(to_double(key, f));
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) (s += i ? "," : "") += csv::format_double(v[i]);
  return s;
}

using Setter = std::function<void(ExperimentConfig&, const std::string& key, std::string_view)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto str = [](std::string ExperimentConfig::*m) {
      return [m](ExperimentConfig& c, const std::string&, std::string_view v) {
        c.*m = std::string(csv::trim(v));
      };
    };
    t["experiment.output_dir"] = str(&ExperimentConfig::output_dir);
    t["experiment.run_id"] = str(&ExperimentConfig::run_id);
    t["experiment.seed"] = [](auto& c, auto& k, auto v) { c.seed = to_u64(k, v); };
    t["experiment.jobs"] = [](auto& c, auto& k, auto v) { c.jobs = to_int(k, v); };

    t["data.edf_dir"] = str(&ExperimentConfig::data_dir);
    t["data.annotations"] = str(&ExperimentConfig::annotations);
    t["data.synthetic"] = [](auto& c, auto& k, auto v) { c.synthetic = to_bool(k, v); };

    t["synth.duration_s"] = [](auto& c, auto& k, auto v) { c.synth.duration_s = to_double(k, v); };
    t["synth.fs"] = [](auto& c, auto& k, auto v) { c.synth.fs = to_double(k, v); };
    t["synth.channels"] = [](auto& c, auto& k, auto v) { c.synth.channels = to_int(k, v); };
    t["synth.seizures"] = [](auto& c, auto& k, auto v) { c.synth.seizures = to_int(k, v); };
    t["synth.min_len_s"] = [](auto& c, auto& k, auto v) { c.synth.min_len_s = to_double(k, v); };
    t["synth.max_len_s"] = [](auto& c, auto& k, auto v) { c.synth.max_len_s = to_double(k, v); };
    t["synth.min_gap_s"] = [](auto& c, auto& k, auto v) { c.synth.min_gap_s = to_double(k, v); };
    t["synth.burst_hz"] = [](auto& c, auto& k, auto v) { c.synth.burst_hz = to_doubles(k, v); };
    t["synth.amplitude_ratio"] = [](auto& c, auto& k, auto v) {
      c.synth.amplitude_ratio = to_double(k, v);
    };
    t["synth.background_rms_uv"] = [](auto& c, auto& k, auto v) {
      c.synth.background_rms_uv = to_double(k, v);
    };
    t["synth.seed"] = [](auto& c, auto& k, auto v) { c.synth.seed = to_u64(k, v); };
    t["synth.file_id"] = [](auto& c, auto&, auto v) { c.synth.file_id = std::string(csv::trim(v)); };

    t["preprocess.bands"] = [](auto& c, auto& k, auto v) {
      c.bands.clear();
      if (csv::trim(v) == "all") {
        c.bands.assign(kAllBands.begin(), kAllBands.end());
        return;
      }
      for (auto f : csv::split(v)) {
        auto b = parse_band(csv::trim(f));
        if (!b) bad_value(k, f, "a band name");
        if (std::find(c.bands.begin(), c.bands.end(), *b) == c.bands.end()) c.bands.push_back(*b);
      }
    };
    t["preprocess.window_s"] = [](auto& c, auto& k, auto v) { c.window_s = to_double(k, v); };
    for (Band b : kAllBands) {
      t["preprocess." + config_key_name(b)] = [b](auto& c, auto& k, auto v) {
        const auto edges = to_doubles(k, v);
        if (edges.size() != 2) bad_value(k, v, "'f_lo,f_hi'");
        c.band_definitions[b] = BandDefinition{b, edges[0], edges[1]};
      };
    }

    t["balance.smote_k"] = [](auto& c, auto& k, auto v) {
      const int n = to_int(k, v);
      if (n < 1) bad_value(k, v, "a positive integer");
      c.smote_k = static_cast<std::size_t>(n);
    };

    t["gcn.hidden"] = [](auto& c, auto& k, auto v) {
      std::vector<int> dims = {c.gcn.layer_dims.front()};
      if (csv::trim(v) != "none" && !csv::trim(v).empty()) {
        for (auto f : csv::split(v)) dims.push_back(to_int(k, f));
      }
      dims.push_back(2);
      c.gcn.layer_dims = dims;
    };
    t["gcn.learning_rate"] = [](auto& c, auto& k, auto v) { c.gcn.learning_rate = to_double(k, v); };
    t["gcn.epochs"] = [](auto& c, auto& k, auto v) { c.gcn.epochs = to_int(k, v); };
    t["gcn.adam_beta1"] = [](auto& c, auto& k, auto v) { c.gcn.adam.beta1 = to_double(k, v); };
    t["gcn.adam_beta2"] = [](auto& c, auto& k, auto v) { c.gcn.adam.beta2 = to_double(k, v); };
    t["gcn.adam_epsilon"] = [](auto& c, auto& k, auto v) { c.gcn.adam.epsilon = to_double(k, v); };
    t["gcn.standardize"] = [](auto& c, auto& k, auto v) {
      c.gcn.standardize_features = to_bool(k, v);
    };

    t["eval.train_fraction"] = [](auto& c, auto& k, auto v) { c.train_fraction = to_double(k, v); };
    t["eval.folds"] = [](auto& c, auto& k, auto v) { c.folds = to_int(k, v); };
    t["eval.repeats"] = [](auto& c, auto& k, auto v) { c.repeats = to_int(k, v); };
    return t;
  }();
  return table;
}

void apply(ExperimentConfig& c, const std::string& key, std::string_view value) {
  auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("unknown config key '" + key + "'");
  it->second(c, key, value);
}

}  // namespace

ExperimentConfig::ExperimentConfig() {
  for (Band b : kAllBands) band_definitions[b] = canonical_band(b);
}

std::string ExperimentConfig::annotations_path() const {
  return annotations.empty() ? (fs::path(data_dir) / "annotations.csv").string() : annotations;
}

std::string ExperimentConfig::run_dir() const { return (fs::path(output_dir) / run_id).string(); }

void ExperimentConfig::validate(bool check_paths) const {
  if (run_id.empty() || run_id.find('/') != std::string::npos || run_id == "." || run_id == "..")
    throw ConfigError("experiment.run_id must be a plain directory name");
  if (output_dir.empty()) throw ConfigError("experiment.output_dir is empty");
  if (jobs < 1) throw ConfigError("experiment.jobs must be at least 1");
  if (bands.empty()) throw ConfigError("preprocess.bands is empty");
  if (!(window_s > 0.0)) throw ConfigError("preprocess.window_s must be positive");
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ConfigError("eval.train_fraction must lie in (0, 1)");
  if (folds < 2) throw ConfigError("eval.folds must be at least 2");
  if (repeats < 1) throw ConfigError("eval.repeats must be at least 1");
  if (smote_k < 1) throw ConfigError("balance.smote_k must be at least 1");
  gcn.validate();
  for (const auto& [b, def] : band_definitions) {
    if (def.band != b) throw InvariantError("band definition stored under the wrong band");
  }
  if (synthetic) {
    if (synth.channels < 1) throw ConfigError("synth.channels must be positive");
    for (Band b : bands) validate_band(band(b), synth.fs);
  }
  if (check_paths) {
    if (!fs::is_directory(data_dir) && !synthetic)
      throw ConfigError("data.edf_dir does not exist: " + data_dir);
    if (!synthetic && !fs::is_regular_file(annotations_path()))
      throw ConfigError("annotation file does not exist: " + annotations_path());
  }
}

ExperimentConfig parse_config(std::string_view ini_text, const std::vector<std::string>& overrides) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(ini_text)};
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  ExperimentConfig c;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError("config key '" + section + "' is outside any section");
    for (const auto& [key, node] : body) apply(c, section + "." + key, node.data());
  }
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + o + "' is not section.key=value");
    const std::string key(csv::trim(std::string_view(o).substr(0, eq)));
    apply(c, key, std::string_view(o).substr(eq + 1));
  }
  c.validate(false);
  return c;
}

ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::string text;
  try {
    text = csv::read_file(path);
  } catch (const DataError& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  return parse_config(text, overrides);
}

std::string format_config(const ExperimentConfig& c) {
  std::ostringstream o;
  auto d = [](double v) { return csv::format_double(v); };
  o << "[experiment]\n"
    << "output_dir = " << c.output_dir << "\n"
    << "run_id = " << c.run_id << "\n"
    << "seed = " << c.seed << "\n"
    << "jobs = " << c.jobs << "\n\n";
  o << "[data]\n"
    << "edf_dir = " << c.data_dir << "\n"
    << "annotations = " << c.annotations << "\n"
    << "synthetic = " << (c.synthetic ? "true" : "false") << "\n\n";
  o << "[synth]\n"
    << "duration_s = " << d(c.synth.duration_s) << "\n"
    << "fs = " << d(c.synth.fs) << "\n"
    << "channels = " << c.synth.channels << "\n"
    << "seizures = " << c.synth.seizures << "\n"
    << "min_len_s = " << d(c.synth.min_len_s) << "\n"
    << "max_len_s = " << d(c.synth.max_len_s) << "\n"
    << "min_gap_s = " << d(c.synth.min_gap_s) << "\n"
    << "burst_hz = " << join(c.synth.burst_hz) << "\n"
    << "amplitude_ratio = " << d(c.synth.amplitude_ratio) << "\n"
    << "background_rms_uv = " << d(c.synth.background_rms_uv) << "\n"
    << "seed = " << c.synth.seed << "\n"
    << "file_id = " << c.synth.file_id << "\n\n";
  o << "[preprocess]\nbands = ";
  for (std::size_t i = 0; i < c.bands.size(); ++i) o << (i ? "," : "") << config_key_name(c.bands[i]);
  o << "\nwindow_s = " << d(c.window_s) << "\n";
  for (Band b : kAllBands) {
    const auto def = c.band(b);
    o << config_key_name(b) << " = " << d(def.f_lo) << "," << d(def.f_hi) << "\n";
  }
  o << "\n[balance]\nsmote_k = " << c.smote_k << "\n\n";
  o << "[gcn]\nhidden = ";
  const auto& dims = c.gcn.layer_dims;
  if (dims.size() == 2) o << "none";
  for (std::size_t i = 1; i + 1 < dims.size(); ++i) o << (i > 1 ? "," : "") << dims[i];
  o << "\nlearning_rate = " << d(c.gcn.learning_rate) << "\n"
    << "epochs = " << c.gcn.epochs << "\n"
    << "adam_beta1 = " << d(c.gcn.adam.beta1) << "\n"
    << "adam_beta2 = " << d(c.gcn.adam.beta2) << "\n"
    << "adam_epsilon = " << d(c.gcn.adam.epsilon) << "\n"
    << "standardize = " << (c.gcn.standardize_features ? "true" : "false") << "\n\n";
  o << "[eval]\n"
    << "train_fraction = " << d(c.train_fraction) << "\n"
    << "folds = " << c.folds << "\n"
    << "repeats = " << c.repeats << "\n";
  return o.str();
}

// --- helpers -----------------------------------------------------------------------

namespace {

void write_text(const fs::path& path, std::string_view text) {
  fs::create_directories(path.parent_path());
  csv::write_file(path.string(), text);
}

// The config snapshot pins a run id to one configuration.
void claim_run_dir(const ExperimentConfig& config) {
  const fs::path dir = config.run_dir();
  const fs::path snapshot = dir / "config.ini";
  const std::string text = format_config(config);
  if (fs::exists(snapshot)) {
    if (csv::read_file(snapshot.string()) != text)
      throw ConfigError("run id '" + config.run_id +
                        "' already exists with a different configuration");
    return;
  }
  write_text(snapshot, text);
}

std::vector<fs::path> edf_files(const std::string& dir) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) throw ConfigError("data.edf_dir does not exist: " + dir);
  for (const auto& e : fs::directory_iterator(dir)) {
    std::string ext = e.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (e.is_regular_file() && ext == ".edf") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

int error_code(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 1;
  if (dynamic_cast<const DataError*>(&e)) return 2;
  return 3;
}

std::string features_dir(const ExperimentConfig& c) {
  return (fs::path(c.run_dir()) / "features").string();
}

std::string feature_csv_path(const ExperimentConfig& c, Band b) {
  return (fs::path(features_dir(c)) / (std::string(band_name(b)) + ".csv")).string();
}

}  // namespace

// --- synth -------------------------------------------------------------------------

SynthesisSpec synthesis_spec(const ExperimentConfig& config) {
  const SynthConfig& s = config.synth;
  SynthesisSpec spec;
  spec.duration_s = s.duration_s;
  spec.fs = s.fs;
  spec.n_channels = s.channels;
  spec.seizure_intervals = random_seizure_intervals(s.duration_s, s.seizures, s.min_len_s,
                                                    s.max_len_s, s.min_gap_s, s.seed);
  spec.burst_frequencies_hz = s.burst_hz;
  spec.burst_amplitude_ratio = s.amplitude_ratio;
  spec.noise_seed = derive_seed(s.seed, kSynthNoise, 0);
  spec.background_rms_uv = s.background_rms_uv;
  spec.file_id = s.file_id;
  return spec;
}

SynthOutputs cmd_synth(const ExperimentConfig& config, Console& console) {
  const SyntheticRecording synth = synthesize_recording(synthesis_spec(config));
  SynthOutputs out;
  out.edf_path = (fs::path(config.data_dir) / config.synth.file_id).string();
  out.annotations_path = config.annotations_path();
  out.annotations = synth.annotations;
  try {
    write_text(out.edf_path, write_edf(synth.recording));
    write_text(out.annotations_path, format_annotations(synth.annotations));
  } catch (const fs::filesystem_error& e) {
    throw ConfigError(std::string("cannot write synthetic data: ") + e.what());
  }
  console.info("synthesized " + out.edf_path + " with " +
               std::to_string(synth.annotations.size()) + " seizure intervals");
  return out;
}

// --- features ----------------------------------------------------------------------

std::vector<SegmentFeatureMatrix> recording_features(const Recording& recording,
                                                     const std::vector<SeizureAnnotation>& annotations,
                                                     const BandDefinition& band, double window_s,
                                                     const std::string& source_file) {
  const Recording filtered = bandpass(recording, band);
  Segmentation seg = segment(filtered, window_s, band.band, source_file);
  const auto windows = label_windows(std::move(seg.windows), annotations);
  std::vector<SegmentFeatureMatrix> out;
  out.reserve(windows.size());
  for (const auto& w : windows) out.push_back(extract_segment_features(w));
  return out;
}

namespace {

FeatureOutputs write_features(const ExperimentConfig& config, const std::vector<Band>& bands,
                              Console& console) {
  if (config.synthetic &&
      !fs::exists(fs::path(config.data_dir) / config.synth.file_id)) {
    cmd_synth(config, console);
  }
  config.validate(true);
  const AnnotationSet annotations = load_annotations(csv::read_file(config.annotations_path()));
  for (const auto& r : annotations.rejected)
    console.warn("annotation line " + std::to_string(r.line) + " rejected: " + r.reason);

  FeatureOutputs out;
  out.dir = features_dir(config);
  fs::create_directories(out.dir);
  std::map<Band, std::string> text;
  for (Band b : bands) {
    if (fs::exists(feature_csv_path(config, b)))
      throw ConfigError("feature file already exists: " + feature_csv_path(config, b));
    text[b] = feature_csv_header() + "\n";
  }

  const auto files = edf_files(config.data_dir);
  if (files.empty()) throw DataError("no .edf files in " + config.data_dir);
  const auto montage = standard_montage();
  for (const auto& path : files) {
    const std::string name = path.filename().string();
    std::optional<Recording> rec;
    std::string skipped;
    try {
      rec = select_channels(read_edf_file(path.string()), montage);
    } catch (const DataError& e) {
      skipped = e.what();
    }
    for (Band b : bands) {
      FileManifestRow row{name, b, 0, 0, "ok"};
      if (skipped.empty()) {
        try {
          const auto feats = recording_features(*rec, annotations.for_file(name), config.band(b),
                                                config.window_s, name);
          for (const auto& f : feats) {
            text[b] += feature_csv_row(f) + "\n";
            row.seizure_windows += f.label == 1 ? 1 : 0;
          }
          row.windows = feats.size();
          if (feats.empty()) row.status = "skipped: shorter than one window";
        } catch (const DataError& e) {
          row.status = std::string("skipped: ") + e.what();
        }
      } else {
        row.status = "skipped: " + skipped;
      }
      if (row.status != "ok") console.warn(name + " [" + std::string(band_name(b)) + "] " + row.status);
      out.manifest.push_back(row);
    }
    console.info("features extracted from " + name);
  }

  for (Band b : bands) {
    out.csv_paths[b] = feature_csv_path(config, b);
    write_text(out.csv_paths[b], text[b]);
  }
  std::string manifest = "source_file,band,windows,seizure_windows,status\n";
  for (const auto& r : out.manifest) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    manifest += r.source_file + "," + std::string(band_name(r.band)) + "," +
                std::to_string(r.windows) + "," + std::to_string(r.seizure_windows) + "," +
                status + "\n";
  }
  const fs::path manifest_path = fs::path(out.dir) / "manifest.csv";
  // Bands added to an existing run append their rows.
  if (fs::exists(manifest_path)) {
    std::string previous = csv::read_file(manifest_path.string());
    manifest = previous + manifest.substr(manifest.find('\n') + 1);
  }
  write_text(manifest_path, manifest);
  return out;
}

}  // namespace

FeatureOutputs cmd_features(const ExperimentConfig& config, Console& console) {
  config.validate(false);
  claim_run_dir(config);
  return write_features(config, config.bands, console);
}

// --- run ---------------------------------------------------------------------------

CvReport band_cross_validation(const FeatureDataset& dataset, const EegGraph& graph,
                               const ExperimentConfig& config, Band band, std::uint64_t seed,
                               Console* console) {
  const std::uint64_t bi = band_index(band);
  const CvPlan plan = kfold_split(dataset.size(), dataset.y, config.folds,
                                  derive_seed(seed, kCvPlan, bi));
  if (!plan.warning.empty() && console)
    console->warn(std::string(band_name(band)) + ": " + plan.warning);
  CvOptions options;
  options.smote_k = config.smote_k;
  options.seed = derive_seed(seed, kCvFolds, bi);
  options.band = std::string(band_name(band));
  return cross_validate(dataset, graph, config.gcn, plan, options);
}

namespace {

struct BandArtifacts {
  std::map<std::string, std::string> files;  // name -> contents
};

BandOutcome run_band(const ExperimentConfig& config, Band band, const EegGraph& graph,
                     Console& console, BandArtifacts& art) {
  BandOutcome out;
  out.band = band;
  const std::string name(band_name(band));
  const std::uint64_t bi = band_index(band);

  const FeatureTable table = parse_feature_csv(csv::read_file(feature_csv_path(config, band)));
  std::vector<int> labels;
  for (const auto& r : table.rows) labels.push_back(r.label);
  const FeatureDataset dataset = FeatureDataset::from_rows(table.X, labels);
  const auto counts = dataset.class_counts();
  console.info(name + ": " + std::to_string(dataset.size()) + " windows, " +
               std::to_string(counts[1]) + " seizure");
  if (counts[0] == 0 || counts[1] == 0) throw DataError(name + ": feature set holds a single class");

  // Held-out split.
  const HoldoutSplit split =
      holdout_split(dataset.y, config.train_fraction, derive_seed(config.seed, kHoldoutSplit, bi));
  const FeatureDataset train = smote(dataset.subset(split.train), config.smote_k,
                                     derive_seed(config.seed, kHoldoutSmote, bi));
  GcnConfig gc = config.gcn;
  gc.seed = derive_seed(config.seed, kHoldoutInit, bi);
  FitResult fit = fit_model(train.X, train.y, graph, gc);
  fit.model.band = name;
  const FeatureDataset test = dataset.subset(split.test);
  const std::vector<double> scores = predict_proba(fit.model, graph, test.X);
  ConfusionMatrix cm;
  out.holdout = evaluate_scores(scores, test.y, &cm);
  out.holdout.band = name;
  out.holdout.fold = "holdout";
  art.files["confusion_holdout.csv"] = confusion_csv(cm);
  const auto test_counts = test.class_counts();
  if (test_counts[0] > 0 && test_counts[1] > 0) {
    art.files["roc_holdout.csv"] = curve_csv(roc_auc(scores, test.y).points, "fpr", "tpr");
    art.files["pr_holdout.csv"] = curve_csv(pr_auc(scores, test.y).points, "recall", "precision");
  }
  std::string loss = "epoch,loss\n";
  for (std::size_t e = 0; e < fit.loss_history.size(); ++e)
    loss += std::to_string(e) + "," + csv::format_double(fit.loss_history[e]) + "\n";
  art.files["loss_holdout.csv"] = loss;
  art.files["model.ckpt"] = serialize_checkpoint(fit.model);
  console.info(name + ": holdout accuracy " + csv::format_double(out.holdout.accuracy));

  // Cross-validation and repeats; repeat 0 is the reported CV.
  const CvReport cv = band_cross_validation(dataset, graph, config, band, config.seed, &console);
  out.cv = cv.summary;
  console.info(name + ": cv mean accuracy " + csv::format_double(cv.summary.mean.accuracy));
  art.files["confusion_cv.csv"] = confusion_csv(cv.pooled);
  art.files["roc_cv.csv"] = curve_csv(roc_auc(cv.oof_scores, dataset.y).points, "fpr", "tpr");
  art.files["pr_cv.csv"] = curve_csv(pr_auc(cv.oof_scores, dataset.y).points, "recall", "precision");

  std::string metrics = metrics_csv_header() + "\n";
  for (const auto& f : cv.folds) metrics += metrics_csv_row(f.report) + "\n";
  metrics += metrics_csv_row(cv.summary.mean) + "\n";
  metrics += metrics_csv_row(cv.summary.std) + "\n";
  metrics += metrics_csv_row(out.holdout) + "\n";
  art.files["metrics.csv"] = metrics;

  out.repeats = repeat_runs(
      [&](std::uint64_t s) {
        if (s == config.seed) return cv.summary.mean;
        MetricsReport m = band_cross_validation(dataset, graph, config, band, s).summary.mean;
        console.info(name + ": repeat seed " + std::to_string(s) + " accuracy " +
                     csv::format_double(m.accuracy));
        return m;
      },
      config.repeats, config.seed);
  std::string rep = metrics_csv_header() + "\n";
  for (auto r : out.repeats.runs) {
    r.band = name;
    rep += metrics_csv_row(r) + "\n";
  }
  for (auto r : {out.repeats.summary.mean, out.repeats.summary.std, out.repeats.summary.min,
                 out.repeats.summary.max}) {
    r.band = name;
    rep += metrics_csv_row(r) + "\n";
  }
  art.files["repeats.csv"] = rep;
  out.ok = true;
  return out;
}

std::string pct(double v) { return csv::format_double(100.0 * v); }

}  // namespace

RunOutputs cmd_run(const ExperimentConfig& config, Console& console) {
  config.validate(false);
  claim_run_dir(config);
  RunOutputs out;
  out.dir = config.run_dir();
  for (Band b : config.bands) {
    if (fs::exists(fs::path(out.dir) / band_name(b)))
      throw ConfigError("results for " + std::string(band_name(b)) + " already exist in " + out.dir);
  }

  std::vector<Band> missing;
  for (Band b : config.bands)
    if (!fs::exists(feature_csv_path(config, b))) missing.push_back(b);
  if (!missing.empty()) write_features(config, missing, console);

  const EegGraph graph = standard_graph();
  const std::size_t nb = config.bands.size();
  out.bands.resize(nb);
  std::vector<BandArtifacts> artifacts(nb);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < nb;) {
      const Band b = config.bands[i];
      try {
        out.bands[i] = run_band(config, b, graph, console, artifacts[i]);
      } catch (const std::exception& e) {
        out.bands[i] = BandOutcome{};
        out.bands[i].band = b;
        out.bands[i].error = e.what();
        out.bands[i].error_code = error_code(e);
        console.warn(std::string(band_name(b)) + " failed: " + e.what());
      }
    }
  };
  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(config.jobs), nb);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  nlohmann::json manifest;
  manifest["run_id"] = config.run_id;
  manifest["seed"] = config.seed;
  manifest["config_file"] = "config.ini";
  manifest["config_sha256"] = sha256_hex(format_config(config));
  manifest["graph_fingerprint"] = adjacency_fingerprint(graph.adjacency);
  nlohmann::json inputs = nlohmann::json::object();
  for (const auto& p : edf_files(config.data_dir))
    inputs[p.filename().string()] = sha256_hex(csv::read_file(p.string()));
  inputs["annotations"] = sha256_hex(csv::read_file(config.annotations_path()));
  manifest["inputs"] = inputs;

  std::string comparison = "band,accuracy_pct,specificity_pct,sensitivity_pct,status\n";
  for (std::size_t i = 0; i < nb; ++i) {
    BandOutcome& o = out.bands[i];
    const std::string name(band_name(o.band));
    nlohmann::json entry;
    entry["features_sha256"] = fs::exists(feature_csv_path(config, o.band))
                                   ? sha256_hex(csv::read_file(feature_csv_path(config, o.band)))
                                   : "";
    const std::uint64_t bi = band_index(o.band);
    entry["seeds"] = {{"holdout_split", derive_seed(config.seed, kHoldoutSplit, bi)},
                      {"holdout_smote", derive_seed(config.seed, kHoldoutSmote, bi)},
                      {"holdout_init", derive_seed(config.seed, kHoldoutInit, bi)},
                      {"cv_plan", derive_seed(config.seed, kCvPlan, bi)},
                      {"cv_folds", derive_seed(config.seed, kCvFolds, bi)},
                      {"repeat_base", config.seed}};
    if (o.ok) {
      o.dir = (fs::path(out.dir) / name).string();
      nlohmann::json hashes;
      for (const auto& [file, contents] : artifacts[i].files) {
        write_text(fs::path(o.dir) / file, contents);
        hashes[file] = sha256_hex(contents);
      }
      entry["status"] = "ok";
      entry["outputs"] = hashes;
      comparison += name + "," + pct(o.cv.mean.accuracy) + "," + pct(o.cv.mean.specificity) + "," +
                    pct(o.cv.mean.sensitivity) + ",ok\n";
    } else {
      entry["status"] = "error";
      entry["error"] = o.error;
      comparison += name + ",,,,error\n";
    }
    manifest["bands"][name] = entry;
  }
  write_text(fs::path(out.dir) / "comparison.csv", comparison);
  write_text(fs::path(out.dir) / "manifest.json", manifest.dump(2) + "\n");
  return out;
}

// --- predict -----------------------------------------------------------------------

std::string predictions_csv(const std::vector<WindowPrediction>& predictions) {
  std::string s = "window_k,start_s,end_s,p_seizure,label\n";
  for (const auto& p : predictions) {
    s += std::to_string(p.window_k) + "," + csv::format_double(p.start_s) + "," +
         csv::format_double(p.end_s) + "," + csv::format_double(p.p_seizure) + "," +
         std::to_string(p.label) + "\n";
  }
  return s;
}

std::vector<WindowPrediction> cmd_predict(const ExperimentConfig& config,
                                          const PredictRequest& request, Console& console) {
  const auto band = parse_band(request.band);
  if (!band) throw ConfigError("unknown band '" + request.band + "'");
  const GcnModel model = load_checkpoint(request.checkpoint);
  if (model.band != band_name(*band)) {
    throw ConfigError("checkpoint was trained on band " + model.band + ", not " +
                      std::string(band_name(*band)));
  }
  const EegGraph graph = standard_graph();
  if (model.adjacency_fingerprint != adjacency_fingerprint(graph.adjacency))
    throw ConfigError("checkpoint adjacency fingerprint does not match the montage graph");

  const Recording rec = select_channels(read_edf_file(request.edf), standard_montage());
  const std::string name = fs::path(request.edf).filename().string();
  const auto feats = recording_features(rec, {}, config.band(*band), config.window_s, name);
  if (feats.empty()) console.warn(name + " is shorter than one window");

  std::vector<WindowPrediction> out;
  const double fs_hz = rec.fs();
  for (const auto& f : feats) {
    const Prediction p = predict(model, graph, f.node_features);
    const auto L = static_cast<double>(std::llround(config.window_s * fs_hz));
    WindowPrediction w;
    w.window_k = f.window_k;
    w.start_s = static_cast<double>(f.window_k) * L / fs_hz;
    w.end_s = static_cast<double>(f.window_k + 1) * L / fs_hz;
    w.p_seizure = p.p_seizure;
    w.label = p.label;
    out.push_back(w);
  }
  if (!request.output.empty()) write_text(request.output, predictions_csv(out));
  std::size_t positives = 0;
  for (const auto& w : out) positives += static_cast<std::size_t>(w.label);
  console.info(name + ": " + std::to_string(out.size()) + " windows, " + std::to_string(positives) +
               " predicted seizure");
  return out;
}

// --- validate-graph ----------------------------------------------------------------

GraphReport cmd_validate_graph(const std::string& edges_out, Console& console) {
  const auto montage = standard_montage();
  const EegGraph graph = normalize(build_adjacency(montage));
  const GraphReport report = validate(graph);
  if (!edges_out.empty()) write_text(edges_out, edge_list_csv(graph.adjacency, montage));
  console.info("nodes " + std::to_string(graph.num_nodes()) + ", edges " +
               std::to_string(static_cast<long long>(graph.adjacency.sum() / 2)) +
               ", spectral radius " + csv::format_double(report.spectral_radius) +
               ", fingerprint " + adjacency_fingerprint(graph.adjacency));
  for (const auto& f : report.failures) console.warn(f);
  return report;
}

}  // namespace eegcn
