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
#include "luxgen/model/config.hpp"
#include "luxgen/subword/vocabulary.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace luxgen::model {

/// Output ids (without the final eos) for one eos-terminated source.
///
/// Pad, unk and every sentinel are banned at each step. Greedy takes the
/// highest logit (ties: lowest id). Beam keeps `beam_width` hypotheses
/// ranked by summed log-probability and returns the finished one with the
/// best score / ((5 + length) / 6)^length_alpha. Decoding stops at eos or
/// after min(max_new_tokens, max_seq_len) tokens.
std::vector<TokenId> generate_ids(const Weights<float> &weights, const ModelConfig &config,
                                  const subword::SpecialTokens &specials, std::span<const TokenId> source,
                                  const DecodeConfig &decode);

/// Encodes `input`, decodes, and renders the output text. Throws
/// "vocab-mismatch" when the vocabulary does not belong to the checkpoint.
std::string generate(const Checkpoint &checkpoint, const subword::Vocabulary &vocab, std::string_view input,
                     const DecodeConfig &decode);

}  // namespace luxgen::model
