// Copyright 2026 The qfno Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>

#include "qfno/evolve/dataset.hpp"
#include "qfno/fno/model.hpp"

namespace qfno::io {

inline constexpr char kDatasetMagic[] = "QFNO";
inline constexpr char kCheckpointMagic[] = "QFNC";
inline constexpr std::uint32_t kFormatVersion = 1;

// Dataset file: magic, u32 version, u64 metadata length, JSON metadata,
// then inputs followed by targets as interleaved little-endian f64 pairs.
std::string encode_dataset(const evolve::Dataset& data);
evolve::Dataset decode_dataset(const std::string& bytes);
void save_dataset(const std::string& path, const evolve::Dataset& data);
evolve::Dataset load_dataset(const std::string& path);

// Checkpoint file: magic, u32 version, u64 JSON length, JSON model config,
// u32 blob count, then per parameter u32 name length, name, u32 rank,
// rank x u64 dims and the interleaved values, in declaration order.
std::string encode_checkpoint(const fno::FnoModel& model);
fno::FnoModel decode_checkpoint(const std::string& bytes);
void save_checkpoint(const std::string& path, const fno::FnoModel& model);
fno::FnoModel load_checkpoint(const std::string& path);

// Metadata as stored in the header, for inspection and tests.
std::string dataset_metadata_json(const evolve::Dataset& data);
std::string config_json(const fno::FnoConfig& config);

}  // namespace qfno::io
