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

#ifndef EEGCN_CHECKPOINT_HPP_
#define EEGCN_CHECKPOINT_HPP_

#include <string>
#include <string_view>

#include "eegcn/gcn.hpp"

namespace eegcn {

// Layout: 8-byte magic "EEGCNCKP", u32 version, u64 metadata length, JSON
// metadata (config, band, fingerprint, tensor shapes, scaler), then every
// parameter tensor as little-endian f64 in GcnParams::for_each order.
inline constexpr std::string_view kCheckpointMagic = "EEGCNCKP";
inline constexpr std::uint32_t kCheckpointVersion = 1;

std::string serialize_checkpoint(const GcnModel& model);
// Throws ParseError on truncation, bad magic or inconsistent shapes.
GcnModel deserialize_checkpoint(std::string_view bytes);

void save_checkpoint(const GcnModel& model, const std::string& path);
GcnModel load_checkpoint(const std::string& path);

}  // namespace eegcn

#endif  // EEGCN_CHECKPOINT_HPP_
