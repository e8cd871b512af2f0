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
#include "luxgen/model/weights.hpp"

#include <cstdint>

namespace luxgen::model {

/// base * min(1, step / warmup_steps); constant when warmup_steps == 0.
struct LearningRateSchedule {
    double base{1e-4};
    std::int64_t warmup_steps{0};

    [[nodiscard]] double at(std::int64_t step) const;

    /// warmup_steps = round(warmup_fraction * total_steps).
    static LearningRateSchedule from(const TrainConfig &train, std::int64_t total_steps);
};

template <typename T>
struct AdamState {
    Weights<T> first;
    Weights<T> second;
    std::int64_t step{0};
};

template <typename T>
AdamState<T> make_adam_state(const ModelConfig &config);

/// One bias-corrected Adam update at rate `lr`. Increments state.step first,
/// so the first call uses t = 1.
template <typename T>
void adam_step(Weights<T> &params, AdamState<T> &state, const Weights<T> &grads, double lr, const TrainConfig &train);

}  // namespace luxgen::model
