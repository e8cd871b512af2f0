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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace luxgen::subword {

using TokenId = std::int32_t;

/// Reserved ids shared by the denoiser, the model and the decoders.
/// Sentinels occupy the top of the id space: sentinel(k) = vocab_size - 1 - k.
struct SpecialTokens {
    TokenId pad{0};
    TokenId eos{1};
    TokenId unk{2};
    std::int32_t vocab_size{0};
    std::int32_t num_sentinels{0};

    [[nodiscard]] TokenId sentinel(std::int32_t k) const { return vocab_size - 1 - k; }
    [[nodiscard]] bool is_sentinel(TokenId id) const {
        return id >= vocab_size - num_sentinels && id < vocab_size;
    }
    [[nodiscard]] std::int32_t sentinel_index(TokenId id) const { return vocab_size - 1 - id; }
};

struct Merge {
    TokenId left;
    TokenId right;
    bool operator==(const Merge &) const = default;
};

/// Byte-level pair-merge vocabulary.
///
/// Id layout: 0 pad, 1 eos, 2 unk, 3..258 the 256 byte values, then one id
/// per learned merge in learning order, then the sentinels. Immutable once
/// built; encode/decode are const and thread-safe.
class Vocabulary {
public:
    static constexpr TokenId pad_id = 0;
    static constexpr TokenId eos_id = 1;
    static constexpr TokenId unk_id = 2;
    static constexpr std::int32_t num_specials = 3;
    static constexpr TokenId byte_offset = 3;
    static constexpr int file_version = 1;

    Vocabulary(std::vector<Merge> merges, std::int32_t num_sentinels);

    [[nodiscard]] std::int32_t size() const { return static_cast<std::int32_t>(surfaces_.size()) + num_sentinels_; }
    [[nodiscard]] std::int32_t num_sentinels() const { return num_sentinels_; }
    [[nodiscard]] SpecialTokens specials() const {
        return {pad_id, eos_id, unk_id, size(), num_sentinels_};
    }
    [[nodiscard]] const std::vector<Merge> &merges() const { return merges_; }

    /// Raw bytes of a non-special, non-sentinel piece.
    [[nodiscard]] const std::string &surface(TokenId id) const;

    /// Pieces for `text` followed by eos. Never emits pad, unk or sentinels.
    [[nodiscard]] std::vector<TokenId> encode(std::string_view text) const;

    /// Concatenated piece bytes; pad and eos render as nothing, sentinel k as
    /// "<extra_k>". Throws on ids outside [0, size()).
    [[nodiscard]] std::string decode(std::span<const TokenId> ids) const;

    void save(std::ostream &out) const;
    void save(const std::filesystem::path &path) const;
    static Vocabulary load(std::istream &in);
    static Vocabulary load(const std::filesystem::path &path);

    /// FNV-1a of the saved file, as 16 hex digits. Identifies the vocabulary
    /// inside checkpoints.
    [[nodiscard]] std::string fingerprint() const;

private:
    std::vector<Merge> merges_;
    std::vector<std::string> surfaces_;                 // indexed by id, specials empty
    std::unordered_map<std::uint64_t, TokenId> ranks_;  // packed (left, right) -> merged id
    std::int32_t num_sentinels_;

    [[nodiscard]] TokenId merged_id(TokenId left, TokenId right) const;
    void encode_chunk(std::string_view chunk, std::vector<TokenId> &out) const;
};

/// Smallest vocab_size accepted by train_vocab.
constexpr std::int32_t minimum_vocab_size(std::int32_t num_sentinels) {
    return 256 + Vocabulary::num_specials + num_sentinels;
}

/// Splits text into merge scopes: a chunk starts at every space byte, so
/// " word" is one chunk and merges never cross word boundaries.
std::vector<std::string_view> pretokenize(std::string_view text);

/// Learns up to vocab_size - specials - 256 - num_sentinels merges by
/// repeatedly merging the most frequent adjacent pair (ties: the pair whose
/// (left, right) surfaces compare smallest). Stops early when no pair is
/// left, in which case the vocabulary is smaller than requested.
Vocabulary train_vocab(std::span<const std::string> texts, std::int32_t vocab_size, std::int32_t num_sentinels);

inline constexpr std::int32_t default_vocab_size = 8192;
inline constexpr std::int32_t default_num_sentinels = 100;

}  // namespace luxgen::subword
