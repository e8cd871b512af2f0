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

#include "luxgen/common/error.hpp"
#include "luxgen/denoise/denoiser.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

namespace luxgen::denoise {
namespace {

SpecialTokens specials(std::int32_t vocab = 1024, std::int32_t sentinels = 32) {
    return {0, 1, 2, vocab, sentinels};
}

std::vector<TokenId> random_ids(Rng &rng, std::size_t n, const SpecialTokens &sp) {
    std::vector<TokenId> ids(n);
    for (auto &id : ids) id = static_cast<TokenId>(3 + rng.below(sp.vocab_size - sp.num_sentinels - 3));
    return ids;
}

TEST(Corrupt, ZeroRateOnlyAppendsEos) {
    const auto sp = specials();
    Rng rng(1);
    const std::vector<TokenId> ids{10, 11, 12};
    const auto pair = corrupt(ids, 0.0, rng, sp);
    EXPECT_EQ(pair.input_ids, (std::vector<TokenId>{10, 11, 12, 1}));
    EXPECT_EQ(pair.target_ids, (std::vector<TokenId>{1}));
}

TEST(Corrupt, ContiguousDropsShareOneSentinel) {
    const auto sp = specials();
    const TokenId a = 10, b = 11, c = 12, d = 13;
    const std::vector<TokenId> ids{a, b, c, d};
    const auto s0 = sp.sentinel(0), s1 = sp.sentinel(1);
    const auto pair = corrupt_with_mask(ids, {false, true, true, false}, sp);
    EXPECT_EQ(pair.input_ids, (std::vector<TokenId>{a, s0, d, 1}));
    EXPECT_EQ(pair.target_ids, (std::vector<TokenId>{s0, b, c, 1}));
    const auto split = corrupt_with_mask(ids, {true, false, false, true}, sp);
    EXPECT_EQ(split.input_ids, (std::vector<TokenId>{s0, b, c, s1, 1}));
    EXPECT_EQ(split.target_ids, (std::vector<TokenId>{s0, a, s1, d, 1}));
}

TEST(Corrupt, RoundTripProperty) {
    const auto sp = specials();
    Rng rng(2);
    for (int i = 0; i < 2000; ++i) {
        const auto ids = random_ids(rng, 1 + rng.below(80), sp);
        const double rate = rng.uniform() * 0.9;
        const auto pair = corrupt(ids, rate, rng, sp);
        ASSERT_EQ(reconstruct(pair, sp), ids);
        ASSERT_EQ(pair.input_ids.size() - 1 + dropped_count(pair, sp),
                  ids.size() + (pair.target_ids.size() - 1 - dropped_count(pair, sp)));
    }
}

TEST(Corrupt, DropRateIsNearRequested) {
    const auto sp = specials(32128, 100);
    Rng rng(3);
    std::size_t dropped = 0, total = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto ids = random_ids(rng, 256, sp);
        const auto pair = corrupt(ids, 0.15, rng, sp);
        dropped += dropped_count(pair, sp);
        total += ids.size();
    }
    const double observed = static_cast<double>(dropped) / static_cast<double>(total);
    EXPECT_NEAR(observed, 0.15, 0.005);
}

TEST(Corrupt, SentinelExhaustionKeepsRemainingTokens) {
    const auto sp = specials(300, 2);
    const std::vector<TokenId> ids{10, 11, 12, 13, 14, 15};
    const auto pair = corrupt_with_mask(ids, {true, false, true, false, true, true}, sp);
    EXPECT_EQ(pair.input_ids, (std::vector<TokenId>{sp.sentinel(0), 11, sp.sentinel(1), 13, 14, 15, 1}));
    EXPECT_EQ(pair.target_ids, (std::vector<TokenId>{sp.sentinel(0), 10, sp.sentinel(1), 12, 1}));
    EXPECT_EQ(reconstruct(pair, sp), ids);
}

TEST(Corrupt, InvalidInputsAreRejected) {
    const auto sp = specials();
    Rng rng(4);
    const std::vector<TokenId> with_sentinel{5, sp.sentinel(3)};
    EXPECT_THROW(corrupt(with_sentinel, 0.1, rng, sp), Error);
    EXPECT_THROW(corrupt(std::vector<TokenId>{}, 0.1, rng, sp), Error);
    EXPECT_THROW(corrupt(std::vector<TokenId>{5}, 1.0, rng, sp), Error);
    EXPECT_THROW(corrupt_with_mask(std::vector<TokenId>{5, 6}, {true}, sp), Error);
}

TEST(Reconstruct, MismatchedSentinelsAreRejected) {
    const auto sp = specials();
    const auto s0 = sp.sentinel(0), s1 = sp.sentinel(1);
    EXPECT_THROW(reconstruct({{5, s1, 1}, {s1, 6, 1}}, sp), Error);
    EXPECT_THROW(reconstruct({{5, s0, 1}, {1}}, sp), Error);
    EXPECT_THROW(reconstruct({{5, 1}, {s0, 6, 1}}, sp), Error);
    EXPECT_THROW(reconstruct({{5}, {1}}, sp), Error);
}

TEST(Batches, PadTruncateAndConserveTokens) {
    const auto sp = specials();
    Rng rng(6);
    std::vector<DenoisedPair> pairs;
    for (int i = 0; i < 23; ++i) pairs.push_back(corrupt(random_ids(rng, 1 + rng.below(40), sp), 0.15, rng, sp));
    const std::size_t max_len = 16;
    const auto batches = make_batches(pairs, max_len, 5, sp);
    ASSERT_EQ(batches.size(), 5U);
    EXPECT_EQ(batches.back().size, 3U);
    std::size_t row_index = 0;
    for (const auto &b : batches) {
        EXPECT_LE(b.input_len, max_len);
        EXPECT_LE(b.target_len, max_len);
        for (std::size_t r = 0; r < b.size; ++r, ++row_index) {
            const auto &p = pairs[row_index];
            const std::size_t n = std::min(p.input_ids.size(), max_len);
            std::size_t real = 0;
            for (std::size_t c = 0; c < b.input_len; ++c) real += b.input_mask[r * b.input_len + c];
            EXPECT_EQ(real, n);
            EXPECT_EQ(b.input(r, n - 1), sp.eos);
            for (std::size_t c = 0; c + 1 < n; ++c) EXPECT_EQ(b.input(r, c), p.input_ids[c]);
            for (std::size_t c = n; c < b.input_len; ++c) EXPECT_EQ(b.input(r, c), sp.pad);
        }
    }
    EXPECT_THROW(make_batches(pairs, 1, 5, sp), Error);
    EXPECT_THROW(make_batches(pairs, 8, 0, sp), Error);
}

TEST(PairsFile, RoundTripAndTruncation) {
    const auto sp = specials();
    Rng rng(8);
    std::vector<DenoisedPair> pairs;
    for (int i = 0; i < 10; ++i) pairs.push_back(corrupt(random_ids(rng, 1 + rng.below(20), sp), 0.3, rng, sp));
    std::stringstream buffer;
    write_pairs(buffer, pairs);
    EXPECT_EQ(read_pairs(buffer), pairs);
    const std::string text = buffer.str();
    std::istringstream cut(text.substr(0, text.rfind('\n', text.size() - 2) + 1));
    EXPECT_THROW(read_pairs(cut), Error);
    std::istringstream garbage("luxgen-pairs 1 1\n1 x\t1\n");
    EXPECT_THROW(read_pairs(garbage), Error);
}

}  // namespace
}  // namespace luxgen::denoise
