// Copyright (c) 2026 The LuxGen Toolkit Authors. All Rights Reserved.
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

#pragma once

#include "luxgen/model/config.hpp"
#include "luxgen/model/optimizer.hpp"
#include "luxgen/model/weights.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace luxgen::model {

/// Everything needed to continue training or to decode.
struct Checkpoint {
    ModelConfig model;
    TrainConfig train;
    std::string stage{"init"};  ///< "init", "pretrain" or "finetune"
    Weights<float> params;
    AdamState<float> adam;
    /// Data-order generator as it was at the start of the current epoch.
    std::string rng_state;
    std::string vocab_fingerprint;
    /// Optimizer steps completed in this stage.
    std::int64_t step{0};
};

/// Freshly initialized parameters with zero Adam moments.
Checkpoint new_checkpoint(const ModelConfig &model, const TrainConfig &train, const std::string &vocab_fingerprint,
                          std::uint64_t init_seed);

/// Binary format: "LUXGENCK", u32 version, u64 header size, JSON header
/// (configs, counters, tensor names and shapes), then parameters, first and
/// second moments as little-endian float32 in tensor order, then a u64
/// FNV-1a checksum of that payload. Written atomically.
void save_checkpoint(const Checkpoint &checkpoint, const std::filesystem::path &path);

/// Throws "version-mismatch", "corrupt-checkpoint" (bad magic, truncation,
/// checksum) or "checkpoint-mismatch" (shapes disagree with the config).
Checkpoint load_checkpoint(const std::filesystem::path &path);

inline constexpr std::uint32_t checkpoint_version = 1;

}  // namespace luxgen::model
