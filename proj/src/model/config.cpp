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

#include "luxgen/model/config.hpp"

#include "luxgen/common/error.hpp"

#include <fmt/format.h>

namespace luxgen::model {

void ModelConfig::validate() const {
    auto fail = [](const std::string &what) { throw Error("invalid-config", what); };
    if (num_layers < 1 || num_heads < 1 || hidden_size < 1 || feedforward_size < 1) {
        fail("model dimensions must be positive");
    }
    if (hidden_size % num_heads != 0) {
        fail(fmt::format("hidden_size {} is not divisible by num_heads {}", hidden_size, num_heads));
    }
    if (vocab_size < 4) {
        fail(fmt::format("vocab_size {} is too small", vocab_size));
    }
    if (max_seq_len < 2) {
        fail("max_seq_len must be at least 2");
    }
    if (relative_buckets < 4 || relative_buckets % 2 != 0) {
        fail("relative_buckets must be an even number >= 4");
    }
    if (relative_max_distance <= relative_buckets / 4) {
        fail("relative_max_distance must exceed relative_buckets / 4");
    }
}

ModelConfig ModelConfig::paper(int vocab_size) {
    ModelConfig c;
    c.num_layers = 12;
    c.num_heads = 12;
    c.hidden_size = 768;
    c.feedforward_size = 3072;
    c.vocab_size = vocab_size;
    c.max_seq_len = 512;
    return c;
}

ModelConfig ModelConfig::desk(int vocab_size) {
    ModelConfig c;
    c.vocab_size = vocab_size;
    return c;
}

ModelConfig ModelConfig::preset(const std::string &name, int vocab_size) {
    if (name == "paper") {
        return paper(vocab_size);
    }
    if (name == "desk") {
        return desk(vocab_size);
    }
    throw Error("invalid-config", "unknown model preset '" + name + "'");
}

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0)) {
        throw Error("invalid-config", "learning_rate must be positive");
    }
    if (!(warmup_fraction >= 0.0 && warmup_fraction <= 1.0)) {
        throw Error("invalid-config", "warmup_fraction must lie in [0, 1]");
    }
    if (batch_size < 1) {
        throw Error("invalid-config", "batch_size must be positive");
    }
    if (epochs < 0 || total_steps < 0) {
        throw Error("invalid-config", "epochs and total_steps must be non-negative");
    }
    if (!(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0 && epsilon > 0.0)) {
        throw Error("invalid-config", "Adam moment decay rates must lie in [0, 1) and epsilon must be positive");
    }
    if (!(weight_decay >= 0.0)) {
        throw Error("invalid-config", "weight_decay must be non-negative");
    }
}

TrainConfig TrainConfig::paper_pretrain() {
    TrainConfig c;
    c.learning_rate = 1e-4;
    c.batch_size = 128;
    c.total_steps = 1'000'000;
    return c;
}

TrainConfig TrainConfig::paper_finetune() {
    TrainConfig c;
    c.learning_rate = 1e-4;
    c.batch_size = 8;
    c.epochs = 10;
    c.warmup_fraction = 0.1;
    return c;
}

TrainConfig TrainConfig::desk_pretrain() {
    TrainConfig c;
    c.learning_rate = 1e-3;
    c.batch_size = 16;
    c.total_steps = 300;
    return c;
}

TrainConfig TrainConfig::desk_finetune() {
    TrainConfig c;
    c.learning_rate = 1e-3;
    c.batch_size = 8;
    c.epochs = 10;
    c.warmup_fraction = 0.1;
    return c;
}

}  // namespace luxgen::model
