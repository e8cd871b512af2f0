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
#include "luxgen/model/config.hpp"
#include "luxgen/model/weights.hpp"

#include <memory>
#include <span>
#include <vector>

namespace luxgen::model {

/// T5 relative-position bucket for (memory position - query position).
int relative_position_bucket(int relative_position, bool bidirectional, int num_buckets, int max_distance);

/// Activations kept from forward() for backward(). One entry per example.
template <typename T>
struct ForwardState;

template <typename T>
struct ForwardResult {
    /// logits[b] is (target_len x vocab_size). Rows at padded target
    /// positions are computed but carry no meaning.
    std::vector<Matrix<T>> logits;
    std::shared_ptr<ForwardState<T>> state;
};

/// Runs the model on a padded batch. Decoder inputs are the targets shifted
/// right with pad as the start token. Throws "shape-mismatch" naming the
/// offending dimension when the batch does not fit the configuration.
template <typename T>
ForwardResult<T> forward(const Weights<T> &weights, const ModelConfig &config, const Batch &batch);

struct LossValue {
    double value{0.0};
    std::size_t tokens{0};
};

/// Mean token-level cross-entropy over unmasked target positions.
template <typename T>
LossValue loss(const std::vector<Matrix<T>> &logits, const Batch &batch);

/// dLoss/dlogits for the mean reduction (zero on masked rows).
template <typename T>
std::vector<Matrix<T>> loss_gradient(const std::vector<Matrix<T>> &logits, const Batch &batch);

/// Accumulates parameter gradients for the given logit gradients into `grads`.
template <typename T>
void backward(const Weights<T> &weights, const ModelConfig &config, const ForwardState<T> &state,
              const std::vector<Matrix<T>> &dlogits, Weights<T> &grads);

template <typename T>
struct GradientResult {
    LossValue loss;
    Weights<T> gradients;
};

/// Loss and exact gradients for one batch. Throws "non-finite-gradient"
/// naming the first parameter tensor with a NaN/inf entry.
template <typename T>
GradientResult<T> gradients(const Weights<T> &weights, const ModelConfig &config, const Batch &batch);

/// Encoder output for a single unpadded source sequence (len x hidden).
template <typename T>
Matrix<T> encode(const Weights<T> &weights, const ModelConfig &config, std::span<const TokenId> source);

/// Logits (1 x vocab) for the position after `prefix`, where prefix[0] is
/// the decoder start token.
template <typename T>
Matrix<T> next_token_logits(const Weights<T> &weights, const ModelConfig &config, const Matrix<T> &encoded,
                            std::span<const TokenId> prefix);

}  // namespace luxgen::model
