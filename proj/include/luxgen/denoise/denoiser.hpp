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

#include "luxgen/common/rng.hpp"
#include "luxgen/common/sequence.hpp"
#include "luxgen/subword/vocabulary.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace luxgen::denoise {

using subword::SpecialTokens;

/// Span-corruption pair: surviving tokens with every maximal dropped run
/// replaced by one sentinel, and a target listing sentinel(k) followed by the
/// k-th run, terminated by eos.
using DenoisedPair = SequencePair;

inline constexpr double default_drop_rate = 0.15;

/// Drops each position independently with probability `rate` (one uniform
/// draw per position). `ids` must be non-empty, contain no sentinels and no
/// eos terminator. Once every sentinel is in use, later positions are kept.
DenoisedPair corrupt(std::span<const TokenId> ids, double rate, Rng &rng, const SpecialTokens &specials);

/// Deterministic core of corrupt(): `dropped[i]` marks position i.
DenoisedPair corrupt_with_mask(std::span<const TokenId> ids, const std::vector<bool> &dropped,
                               const SpecialTokens &specials);

/// Splices each target run back at its sentinel. Throws on sentinel
/// mismatches between input and target.
std::vector<TokenId> reconstruct(const DenoisedPair &pair, const SpecialTokens &specials);

/// Number of tokens of `ids` that corrupt() would replace (for rate checks).
std::size_t dropped_count(const DenoisedPair &pair, const SpecialTokens &specials);

/// Consecutive groups of `batch_size` pairs, each padded with the pad id.
std::vector<Batch> make_batches(const std::vector<DenoisedPair> &pairs, std::size_t max_len, std::size_t batch_size,
                                const SpecialTokens &specials);

/// Pair files: a header line, then "input ids<TAB>target ids" per record.
void write_pairs(std::ostream &out, const std::vector<DenoisedPair> &pairs);
void write_pairs(const std::filesystem::path &path, const std::vector<DenoisedPair> &pairs);
std::vector<DenoisedPair> read_pairs(std::istream &in);
std::vector<DenoisedPair> read_pairs(const std::filesystem::path &path);

}  // namespace luxgen::denoise
