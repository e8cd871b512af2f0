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

#include "luxgen/model/config_json.hpp"

#include "luxgen/common/error.hpp"

#include <set>
#include <string>

namespace luxgen::model {

namespace {

void reject_unknown(const nlohmann::json &j, std::initializer_list<const char *> known, const char *what) {
    if (!j.is_object()) {
        throw Error("invalid-config", std::string(what) + " must be a JSON object");
    }
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto &[key, value] : j.items()) {
        if (allowed.count(key) == 0) {
            throw Error("invalid-config", std::string("unknown ") + what + " key '" + key + "'");
        }
    }
}

template <typename V>
void read(const nlohmann::json &j, const char *key, V &out) {
    if (auto it = j.find(key); it != j.end()) {
        try {
            it->get_to(out);
        } catch (const nlohmann::json::exception &e) {
            throw Error("invalid-config", std::string("bad value for '") + key + "': " + e.what());
        }
    }
}

}  // namespace

void to_json(nlohmann::json &j, const ModelConfig &c) {
    j = {{"num_layers", c.num_layers},
         {"num_heads", c.num_heads},
         {"hidden_size", c.hidden_size},
         {"feedforward_size", c.feedforward_size},
         {"vocab_size", c.vocab_size},
         {"max_seq_len", c.max_seq_len},
         {"relative_buckets", c.relative_buckets},
         {"relative_max_distance", c.relative_max_distance},
         {"tie_embeddings", c.tie_embeddings}};
}

void from_json(const nlohmann::json &j, ModelConfig &c) {
    reject_unknown(j,
                   {"num_layers", "num_heads", "hidden_size", "feedforward_size", "vocab_size", "max_seq_len",
                    "relative_buckets", "relative_max_distance", "tie_embeddings"},
                   "model");
    read(j, "num_layers", c.num_layers);
    read(j, "num_heads", c.num_heads);
    read(j, "hidden_size", c.hidden_size);
    read(j, "feedforward_size", c.feedforward_size);
    read(j, "vocab_size", c.vocab_size);
    read(j, "max_seq_len", c.max_seq_len);
    read(j, "relative_buckets", c.relative_buckets);
    read(j, "relative_max_distance", c.relative_max_distance);
    read(j, "tie_embeddings", c.tie_embeddings);
}

void to_json(nlohmann::json &j, const TrainConfig &c) {
    j = {{"learning_rate", c.learning_rate},
         {"batch_size", c.batch_size},
         {"total_steps", c.total_steps},
         {"epochs", c.epochs},
         {"warmup_fraction", c.warmup_fraction},
         {"seed", c.seed},
         {"beta1", c.beta1},
         {"beta2", c.beta2},
         {"epsilon", c.epsilon},
         {"weight_decay", c.weight_decay},
         {"checkpoint_every", c.checkpoint_every},
         {"log_every", c.log_every}};
}

void from_json(const nlohmann::json &j, TrainConfig &c) {
    reject_unknown(j,
                   {"learning_rate", "batch_size", "total_steps", "epochs", "warmup_fraction", "seed", "beta1", "beta2",
                    "epsilon", "weight_decay", "checkpoint_every", "log_every"},
                   "train");
    read(j, "learning_rate", c.learning_rate);
    read(j, "batch_size", c.batch_size);
    read(j, "total_steps", c.total_steps);
    read(j, "epochs", c.epochs);
    read(j, "warmup_fraction", c.warmup_fraction);
    read(j, "seed", c.seed);
    read(j, "beta1", c.beta1);
    read(j, "beta2", c.beta2);
    read(j, "epsilon", c.epsilon);
    read(j, "weight_decay", c.weight_decay);
    read(j, "checkpoint_every", c.checkpoint_every);
    read(j, "log_every", c.log_every);
}

void to_json(nlohmann::json &j, const DecodeConfig &c) {
    j = {{"mode", c.mode == DecodeMode::beam ? "beam" : "greedy"},
         {"beam_width", c.beam_width},
         {"max_new_tokens", c.max_new_tokens},
         {"length_alpha", c.length_alpha}};
}

void from_json(const nlohmann::json &j, DecodeConfig &c) {
    reject_unknown(j, {"mode", "beam_width", "max_new_tokens", "length_alpha"}, "decode");
    std::string mode = c.mode == DecodeMode::beam ? "beam" : "greedy";
    read(j, "mode", mode);
    if (mode == "greedy") {
        c.mode = DecodeMode::greedy;
    } else if (mode == "beam") {
        c.mode = DecodeMode::beam;
    } else {
        throw Error("invalid-config", "decode mode must be 'greedy' or 'beam', got '" + mode + "'");
    }
    read(j, "beam_width", c.beam_width);
    read(j, "max_new_tokens", c.max_new_tokens);
    read(j, "length_alpha", c.length_alpha);
    if (c.beam_width < 1 || c.max_new_tokens < 1) {
        throw Error("invalid-config", "beam_width and max_new_tokens must be positive");
    }
}

}  // namespace luxgen::model
