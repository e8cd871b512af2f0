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

#include "luxgen/common/sequence.hpp"
#include "luxgen/model/checkpoint.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace luxgen::model {

struct StepRecord {
    std::int64_t step{0};
    double loss{0.0};
    double lr{0.0};
    double wall_time{0.0};  ///< seconds since this train() call started
};

struct TrainOptions {
    /// Written every train.checkpoint_every steps and when the run ends.
    /// Empty: nothing is written.
    std::filesystem::path checkpoint_path;
    /// Training log, one JSON record per logged step, appended.
    std::filesystem::path log_path;
    /// Stop after this many steps in this call, as if interrupted
    /// (negative: run to completion).
    std::int64_t stop_after{-1};
    std::function<void(const StepRecord &)> on_step;
};

struct TrainResult {
    Checkpoint checkpoint;
    std::vector<StepRecord> history;
    bool halted{false};
    std::string halt_reason;
};

/// epochs * ceil(pairs / batch_size) when epochs > 0, else total_steps.
std::int64_t planned_steps(const TrainConfig &train, std::size_t num_pairs);

/// Continues the optimizer loop of `start` (its stage, step counter, Adam
/// state and data-order generator) until planned_steps is reached.
///
/// Batches follow per-epoch permutations of `data` drawn from the
/// checkpoint's generator, so a run resumed from any saved checkpoint sees
/// exactly the batches it would have seen uninterrupted. A non-finite loss or
/// gradient halts the run; the returned checkpoint and the file on disk are
/// the last good state.
TrainResult train(Checkpoint start, std::span<const SequencePair> data, const TrainOptions &options = {});

/// New model initialized from derive_seed(train.seed, "init").
TrainResult pretrain(const ModelConfig &model, const TrainConfig &train, const std::string &vocab_fingerprint,
                     std::span<const SequencePair> data, const TrainOptions &options = {});

/// Starts from the parameters of `pretrained` with fresh optimizer state.
/// Throws "vocab-mismatch" when `vocab_fingerprint` differs from the
/// checkpoint's.
TrainResult finetune(const Checkpoint &pretrained, const TrainConfig &train, const std::string &vocab_fingerprint,
                     std::span<const SequencePair> data, const TrainOptions &options = {});

}  // namespace luxgen::model
