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

#include <cstdint>
#include <string>

namespace luxgen::model {

/// Encoder-decoder shape. The encoder and the decoder both have
/// `num_layers` blocks.
struct ModelConfig {
    int num_layers{2};
    int num_heads{4};
    int hidden_size{128};
    int feedforward_size{512};
    int vocab_size{8192};
    int max_seq_len{128};
    int relative_buckets{32};
    int relative_max_distance{128};
    bool tie_embeddings{true};

    /// Throws luxgen::Error("invalid-config") when an invariant is violated.
    void validate() const;

    [[nodiscard]] int head_size() const { return hidden_size / num_heads; }

    /// 12/12 layers, 12 heads, 768 hidden, 3072 feed-forward, 512 tokens.
    static ModelConfig paper(int vocab_size = 32128);
    /// 2/2 layers, 4 heads, 128 hidden, 512 feed-forward, 128 tokens.
    static ModelConfig desk(int vocab_size = 8192);
    static ModelConfig preset(const std::string &name, int vocab_size);

    bool operator==(const ModelConfig &) const = default;
};

struct TrainConfig {
    double learning_rate{1e-4};
    int batch_size{128};
    std::int64_t total_steps{0};  ///< used when epochs == 0
    int epochs{0};
    double warmup_fraction{0.0};
    std::uint64_t seed{0};
    double beta1{0.9};
    double beta2{0.999};
    double epsilon{1e-8};
    /// Decoupled weight decay on embedding and projection matrices (0: plain Adam).
    double weight_decay{0.0};
    std::int64_t checkpoint_every{0};  ///< 0 disables periodic checkpoints
    std::int64_t log_every{1};

    void validate() const;

    /// lr 1e-4, batch 128, 1M steps, constant rate.
    static TrainConfig paper_pretrain();
    /// lr 1e-4, batch 8, 10 epochs, linear warm-up over the first 10%.
    static TrainConfig paper_finetune();
    static TrainConfig desk_pretrain();
    static TrainConfig desk_finetune();

    bool operator==(const TrainConfig &) const = default;
};

enum class DecodeMode { greedy, beam };

struct DecodeConfig {
    DecodeMode mode{DecodeMode::greedy};
    int beam_width{4};
    int max_new_tokens{64};
    double length_alpha{0.6};
    /// Lets the decoder emit sentinel ids, as needed to produce denoising
    /// targets. Text generation keeps them banned.
    bool allow_sentinels{false};
};

}  // namespace luxgen::model
