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

#include "luxgen/subword/vocabulary.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace luxgen {

using subword::TokenId;

/// An encoder input and its decoder target, both eos-terminated.
struct SequencePair {
    std::vector<TokenId> input_ids;
    std::vector<TokenId> target_ids;

    bool operator==(const SequencePair &) const = default;
};

/// Row-major padded batch. Masks hold 1 for real tokens and 0 for padding.
struct Batch {
    std::size_t size{0};
    std::size_t input_len{0};
    std::size_t target_len{0};
    std::vector<TokenId> inputs;
    std::vector<std::uint8_t> input_mask;
    std::vector<TokenId> targets;
    std::vector<std::uint8_t> target_mask;

    [[nodiscard]] TokenId input(std::size_t row, std::size_t col) const { return inputs[row * input_len + col]; }
    [[nodiscard]] TokenId target(std::size_t row, std::size_t col) const { return targets[row * target_len + col]; }
    [[nodiscard]] std::size_t real_target_tokens() const;
};

/// Pads `pairs` into one batch. Sequences longer than `max_len` are cut to
/// max_len tokens with eos forced into the last slot.
Batch make_batch(const std::vector<const SequencePair *> &pairs, std::size_t max_len, TokenId pad, TokenId eos);

}  // namespace luxgen
