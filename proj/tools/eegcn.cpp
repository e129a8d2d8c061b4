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

// eegcn: command-line driver for the band-specific seizure detection pipeline.
//
//   eegcn synth          --config exp.ini
//   eegcn features       --config exp.ini
//   eegcn run            --config exp.ini [--set section.key=value ...]
//   eegcn predict        --config exp.ini --checkpoint model.ckpt --edf file.edf --band delta
//   eegcn validate-graph [--edges edges.csv]
//
// Exit codes: 0 success, 1 configuration error, 2 data error, 3 internal error.

#include <CLI11.hpp>
#include <iostream>

#include "eegcn/errors.hpp"
#include "eegcn/experiment.hpp"

namespace {

eegcn::ExperimentConfig config_from(const std::string& path, const std::vector<std::string>& sets) {
  if (path.empty()) return eegcn::parse_config("", sets);
  return eegcn::load_config(path, sets);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Band-specific EEG seizure detection with a graph convolutional network"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("-c,--config", config_path, "INI experiment config");
    cmd->add_option("-s,--set", sets, "Override a config value, section.key=value");
  };

  auto* synth = app.add_subcommand("synth", "Write a synthetic EDF recording and its annotations");
  add_config(synth);
  auto* features = app.add_subcommand("features", "Extract per-band feature CSVs");
  add_config(features);
  auto* run = app.add_subcommand("run", "Train and evaluate every configured band");
  add_config(run);

  eegcn::PredictRequest request;
  auto* predict = app.add_subcommand("predict", "Score every window of an EDF file");
  add_config(predict);
  predict->add_option("--checkpoint", request.checkpoint, "Model checkpoint")->required();
  predict->add_option("--edf", request.edf, "EDF recording")->required();
  predict->add_option("--band", request.band, "Band the checkpoint was trained on")->required();
  predict->add_option("-o,--output", request.output, "Predictions CSV (default: stdout)");

  std::string edges_out;
  auto* graph = app.add_subcommand("validate-graph", "Check the montage graph");
  graph->add_option("--edges", edges_out, "Write the edge list CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  eegcn::Console console(&std::cerr);
  try {
    if (*synth) {
      eegcn::cmd_synth(config_from(config_path, sets), console);
    } else if (*features) {
      const auto out = eegcn::cmd_features(config_from(config_path, sets), console);
      console.info("feature files in " + out.dir);
    } else if (*run) {
      const auto out = eegcn::cmd_run(config_from(config_path, sets), console);
      console.info("results in " + out.dir);
      for (const auto& b : out.bands) {
        if (!b.ok) return b.error_code;
      }
    } else if (*predict) {
      const auto preds = eegcn::cmd_predict(config_from(config_path, sets), request, console);
      if (request.output.empty()) std::cout << eegcn::predictions_csv(preds);
    } else if (*graph) {
      const auto report = eegcn::cmd_validate_graph(edges_out, console);
      if (!report.passed) return 3;
    }
  } catch (const eegcn::ConfigError& e) {
    console.warn(std::string("configuration error: ") + e.what());
    return 1;
  } catch (const eegcn::DataError& e) {
    console.warn(std::string("data error: ") + e.what());
    return 2;
  } catch (const std::exception& e) {
    console.warn(std::string("internal error: ") + e.what());
    return 3;
  }
  return 0;
}
