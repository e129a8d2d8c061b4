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

#include "eegcn/checkpoint.hpp"

#include <bit>
#include <nlohmann/json.hpp>

#include "eegcn/csv.hpp"
#include "eegcn/errors.hpp"

namespace eegcn {
namespace {

using nlohmann::json;

template <typename T>
void put(std::string& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
}

template <typename T>
T get(std::string_view bytes, std::size_t& pos) {
  if (bytes.size() - pos < sizeof(T)) throw ParseError("checkpoint truncated", pos);
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    value |= static_cast<T>(static_cast<unsigned char>(bytes[pos + i])) << (8 * i);
  pos += sizeof(T);
  return value;
}

json vec(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vector unvec(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

std::string serialize_checkpoint(const GcnModel& model) {
  model.config.validate();
  json meta;
  meta["band"] = model.band;
  meta["adjacency_fingerprint"] = model.adjacency_fingerprint;
  meta["config"] = {{"layer_dims", model.config.layer_dims},
                    {"learning_rate", model.config.learning_rate},
                    {"epochs", model.config.epochs},
                    {"adam_beta1", model.config.adam.beta1},
                    {"adam_beta2", model.config.adam.beta2},
                    {"adam_epsilon", model.config.adam.epsilon},
                    {"seed", model.config.seed},
                    {"standardize_features", model.config.standardize_features}};
  meta["scaler"] = {{"mean", vec(model.scaler.mean)}, {"scale", vec(model.scaler.scale)}};
  json tensors = json::array();
  std::size_t count = 0;
  model.params.for_each_const([&](const std::string& name, const double*, Eigen::Index size) {
    tensors.push_back({{"name", name}, {"size", size}});
    count += static_cast<std::size_t>(size);
  });
  meta["tensors"] = tensors;
  const std::string text = meta.dump();

  std::string out(kCheckpointMagic);
  put<std::uint32_t>(out, kCheckpointVersion);
  put<std::uint64_t>(out, text.size());
  out += text;
  out.reserve(out.size() + count * sizeof(double));
  model.params.for_each_const([&](const std::string&, const double* data, Eigen::Index size) {
    for (Eigen::Index i = 0; i < size; ++i) put<std::uint64_t>(out, std::bit_cast<std::uint64_t>(data[i]));
  });
  return out;
}

GcnModel deserialize_checkpoint(std::string_view bytes) {
  if (!bytes.starts_with(kCheckpointMagic)) throw ParseError("not a checkpoint (bad magic)", 0);
  std::size_t pos = kCheckpointMagic.size();
  const auto version = get<std::uint32_t>(bytes, pos);
  if (version != kCheckpointVersion)
    throw ParseError("unsupported checkpoint version " + std::to_string(version), pos - 4);
  const auto len = get<std::uint64_t>(bytes, pos);
  if (bytes.size() - pos < len) throw ParseError("checkpoint metadata truncated", pos);

  GcnModel model;
  json meta;
  try {
    meta = json::parse(bytes.substr(pos, len));
    const json& c = meta.at("config");
    model.config.layer_dims = c.at("layer_dims").get<std::vector<int>>();
    model.config.learning_rate = c.at("learning_rate").get<double>();
    model.config.epochs = c.at("epochs").get<int>();
    model.config.adam.beta1 = c.at("adam_beta1").get<double>();
    model.config.adam.beta2 = c.at("adam_beta2").get<double>();
    model.config.adam.epsilon = c.at("adam_epsilon").get<double>();
    model.config.seed = c.at("seed").get<std::uint64_t>();
    model.config.standardize_features = c.at("standardize_features").get<bool>();
    model.band = meta.at("band").get<std::string>();
    model.adjacency_fingerprint = meta.at("adjacency_fingerprint").get<std::string>();
    model.scaler.mean = unvec(meta.at("scaler").at("mean"));
    model.scaler.scale = unvec(meta.at("scaler").at("scale"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("checkpoint metadata: ") + e.what(), pos);
  }
  try {
    model.config.validate();
  } catch (const ConfigError& e) {
    throw ParseError(std::string("checkpoint config: ") + e.what(), pos);
  }
  pos += len;

  model.params = init_params(model.config);
  const json& tensors = meta.at("tensors");
  std::size_t t = 0;
  model.params.for_each([&](const std::string& name, double* data, Eigen::Index size) {
    if (t >= tensors.size() || tensors[t].value("name", "") != name ||
        tensors[t].value("size", Eigen::Index{-1}) != size) {
      throw ParseError("checkpoint tensor " + name + " does not match the config", pos);
    }
    ++t;
    for (Eigen::Index i = 0; i < size; ++i) data[i] = std::bit_cast<double>(get<std::uint64_t>(bytes, pos));
  });
  if (t != tensors.size()) throw ParseError("checkpoint lists extra tensors", pos);
  if (pos != bytes.size()) throw ParseError("trailing bytes after checkpoint payload", pos);
  return model;
}

void save_checkpoint(const GcnModel& model, const std::string& path) {
  csv::write_file(path, serialize_checkpoint(model));
}

GcnModel load_checkpoint(const std::string& path) {
  return deserialize_checkpoint(csv::read_file(path));
}

}  // namespace eegcn
