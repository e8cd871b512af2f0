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

#include "luxgen/model/optimizer.hpp"

#include "luxgen/common/error.hpp"

#include <algorithm>
#include <cmath>

namespace luxgen::model {

double LearningRateSchedule::at(std::int64_t step) const {
    if (warmup_steps <= 0) {
        return base;
    }
    return base * std::min(1.0, static_cast<double>(step) / static_cast<double>(warmup_steps));
}

LearningRateSchedule LearningRateSchedule::from(const TrainConfig &train, std::int64_t total_steps) {
    return {train.learning_rate, std::llround(train.warmup_fraction * static_cast<double>(total_steps))};
}

template <typename T>
AdamState<T> make_adam_state(const ModelConfig &config) {
    return {make_weights<T>(config), make_weights<T>(config), 0};
}

template <typename T>
void adam_step(Weights<T> &params, AdamState<T> &state, const Weights<T> &grads, double lr, const TrainConfig &train) {
    ++state.step;
    const double t = static_cast<double>(state.step);
    const T b1 = static_cast<T>(train.beta1);
    const T b2 = static_cast<T>(train.beta2);
    const T c1 = static_cast<T>(1.0 - std::pow(train.beta1, t));
    const T c2 = static_cast<T>(1.0 - std::pow(train.beta2, t));
    const T rate = static_cast<T>(lr);
    const T eps = static_cast<T>(train.epsilon);
    const T decay = static_cast<T>(lr * train.weight_decay);
    visit_tensors(
        [&](const std::string &name, TensorKind kind, Matrix<T> &p, Matrix<T> &m, Matrix<T> &v, const Matrix<T> &g) {
            if (p.rows() != g.rows() || p.cols() != g.cols()) {
                throw Error("shape-mismatch", "gradient shape differs for " + name);
            }
            m.array() = b1 * m.array() + (T(1) - b1) * g.array();
            v.array() = b2 * v.array() + (T(1) - b2) * g.array().square();
            if (decay != T(0) && (kind == TensorKind::embedding || kind == TensorKind::projection)) {
                p.array() -= decay * p.array();
            }
            p.array() -= rate * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
        },
        params, state.first, state.second, grads);
}

template AdamState<float> make_adam_state<float>(const ModelConfig &);
template AdamState<double> make_adam_state<double>(const ModelConfig &);
template void adam_step<float>(Weights<float> &, AdamState<float> &, const Weights<float> &, double, const TrainConfig &);
template void adam_step<double>(Weights<double> &, AdamState<double> &, const Weights<double> &, double,
                                const TrainConfig &);

}  // namespace luxgen::model
