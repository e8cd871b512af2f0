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
#include "luxgen/common/rng.hpp"
#include "luxgen/subword/vocabulary.hpp"

#include <gtest/gtest.h>

#include <map>
#include <sstream>

namespace luxgen::subword {
namespace {

// Straightforward re-count-everything trainer used as an oracle.
std::vector<Merge> reference_merges(const std::vector<std::string> &texts, int merges_wanted) {
    std::map<std::string, std::uint64_t> chunks;
    for (const auto &t : texts) {
        for (const auto c : pretokenize(t)) ++chunks[std::string(c)];
    }
    std::vector<std::string> surfaces(3);
    for (int b = 0; b < 256; ++b) surfaces.emplace_back(1, static_cast<char>(b));
    std::vector<std::pair<std::vector<TokenId>, std::uint64_t>> words;
    for (const auto &[c, n] : chunks) {
        std::vector<TokenId> s;
        for (char ch : c) s.push_back(3 + static_cast<unsigned char>(ch));
        words.emplace_back(s, n);
    }
    std::vector<Merge> merges;
    while (static_cast<int>(merges.size()) < merges_wanted) {
        std::map<std::pair<TokenId, TokenId>, std::uint64_t> counts;
        for (const auto &[s, n] : words) {
            for (std::size_t i = 0; i + 1 < s.size(); ++i) counts[{s[i], s[i + 1]}] += n;
        }
        if (counts.empty()) break;
        std::pair<TokenId, TokenId> best{};
        std::uint64_t best_count = 0;
        for (const auto &[p, n] : counts) {
            const auto key = std::make_pair(surfaces[p.first], surfaces[p.second]);
            if (n > best_count ||
                (n == best_count && key < std::make_pair(surfaces[best.first], surfaces[best.second]))) {
                best = p;
                best_count = n;
            }
        }
        const auto merged = static_cast<TokenId>(surfaces.size());
        surfaces.push_back(surfaces[best.first] + surfaces[best.second]);
        merges.push_back({best.first, best.second});
        for (auto &[s, n] : words) {
            std::vector<TokenId> next;
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (i + 1 < s.size() && s[i] == best.first && s[i + 1] == best.second) {
                    next.push_back(merged);
                    ++i;
                } else {
                    next.push_back(s[i]);
                }
            }
            s = next;
        }
    }
    return merges;
}

// Applies merges one after another across the whole chunk.
std::vector<TokenId> reference_encode(const std::vector<Merge> &merges, std::string_view text) {
    std::vector<TokenId> out;
    for (const auto chunk : pretokenize(text)) {
        std::vector<TokenId> s;
        for (char ch : chunk) s.push_back(3 + static_cast<unsigned char>(ch));
        for (std::size_t m = 0; m < merges.size(); ++m) {
            std::vector<TokenId> next;
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (i + 1 < s.size() && s[i] == merges[m].left && s[i + 1] == merges[m].right) {
                    next.push_back(static_cast<TokenId>(259 + m));
                    ++i;
                } else {
                    next.push_back(s[i]);
                }
            }
            s = next;
        }
        out.insert(out.end(), s.begin(), s.end());
    }
    out.push_back(Vocabulary::eos_id);
    return out;
}

std::vector<std::string> random_corpus(Rng &rng, int lines) {
    const char *syllables[] = {"lë", "tze", "buerg", "ma", "nn", "de", "r ", " ", "é", "ch", "en", "ge", "sch"};
    std::vector<std::string> out;
    for (int i = 0; i < lines; ++i) {
        std::string line;
        const auto n = 1 + rng.below(12);
        for (std::uint64_t k = 0; k < n; ++k) line += syllables[rng.below(std::size(syllables))];
        out.push_back(line);
    }
    return out;
}

TEST(Train, SingleMergeOnRepeatedLetters) {
    const std::vector<std::string> texts{"aaaa aaaa"};
    const auto vocab = train_vocab(texts, minimum_vocab_size(2) + 1, 2);
    ASSERT_EQ(vocab.merges().size(), 1U);
    EXPECT_EQ(vocab.surface(259), "aa");
    EXPECT_EQ(vocab.size(), 262);
    EXPECT_EQ(vocab.encode("aaaa"), (std::vector<TokenId>{259, 259, Vocabulary::eos_id}));
}

TEST(Train, BelowMinimumSizeIsRejected) {
    const std::vector<std::string> texts{"abc"};
    try {
        train_vocab(texts, minimum_vocab_size(10) - 1, 10);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), "invalid-argument");
    }
    EXPECT_THROW(train_vocab(std::vector<std::string>{}, 400, 0), Error);
}

TEST(Train, MatchesReferenceTrainer) {
    Rng rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        const auto texts = random_corpus(rng, 60);
        const int merges = 40;
        const auto vocab = train_vocab(texts, minimum_vocab_size(4) + merges, 4);
        EXPECT_EQ(vocab.merges(), reference_merges(texts, merges)) << "trial " << trial;
    }
}

TEST(Encode, MatchesReferenceEncoder) {
    Rng rng(5);
    const auto texts = random_corpus(rng, 200);
    const auto vocab = train_vocab(texts, minimum_vocab_size(8) + 80, 8);
    for (const auto &t : random_corpus(rng, 200)) {
        EXPECT_EQ(vocab.encode(t), reference_encode(vocab.merges(), t)) << t;
    }
}

TEST(Encode, RoundTripsArbitraryBytes) {
    Rng rng(9);
    const auto vocab = train_vocab(random_corpus(rng, 100), minimum_vocab_size(16) + 50, 16);
    for (int i = 0; i < 500; ++i) {
        std::string s;
        const auto n = rng.below(40);
        for (std::uint64_t k = 0; k < n; ++k) s.push_back(static_cast<char>(rng.below(256)));
        const auto ids = vocab.encode(s);
        ASSERT_EQ(ids.back(), Vocabulary::eos_id);
        for (std::size_t k = 0; k + 1 < ids.size(); ++k) {
            ASSERT_GE(ids[k], Vocabulary::byte_offset);
            ASSERT_FALSE(vocab.specials().is_sentinel(ids[k]));
        }
        EXPECT_EQ(vocab.decode(ids), s);
    }
}

TEST(Encode, EmptyTextIsJustEos) {
    const Vocabulary vocab({}, 4);
    EXPECT_EQ(vocab.encode(""), std::vector<TokenId>{Vocabulary::eos_id});
    EXPECT_EQ(vocab.decode(std::vector<TokenId>{Vocabulary::eos_id, Vocabulary::pad_id}), "");
}

TEST(Decode, SentinelsAndRangeChecks) {
    const Vocabulary vocab({}, 4);
    const auto sp = vocab.specials();
    EXPECT_EQ(vocab.size(), 263);
    EXPECT_EQ(sp.sentinel(0), 262);
    EXPECT_EQ(sp.sentinel(3), 259);
    EXPECT_TRUE(sp.is_sentinel(259));
    EXPECT_FALSE(sp.is_sentinel(258));
    EXPECT_EQ(vocab.decode(std::vector<TokenId>{sp.sentinel(0), 3 + 'x', sp.sentinel(1)}), "<extra_0>x<extra_1>");
    EXPECT_THROW(vocab.decode(std::vector<TokenId>{263}), Error);
    EXPECT_THROW(vocab.decode(std::vector<TokenId>{-1}), Error);
}

TEST(Decode, RandomIdsEitherDecodeOrRaise) {
    Rng rng(44);
    const auto vocab = train_vocab(random_corpus(rng, 50), minimum_vocab_size(8) + 20, 8);
    for (int i = 0; i < 2000; ++i) {
        std::vector<TokenId> ids;
        const auto n = rng.below(10);
        bool bad = false;
        for (std::uint64_t k = 0; k < n; ++k) {
            const auto id = static_cast<TokenId>(static_cast<std::int64_t>(rng.below(vocab.size() + 20)) - 10);
            bad |= id < 0 || id >= vocab.size();
            ids.push_back(id);
        }
        if (bad) {
            EXPECT_THROW(vocab.decode(ids), Error);
        } else {
            EXPECT_NO_THROW(vocab.decode(ids));
        }
    }
}

TEST(Persist, SaveLoadIsExactAndDeterministic) {
    Rng rng(2);
    const auto texts = random_corpus(rng, 80);
    const auto a = train_vocab(texts, minimum_vocab_size(8) + 30, 8);
    const auto b = train_vocab(texts, minimum_vocab_size(8) + 30, 8);
    EXPECT_EQ(a.fingerprint(), b.fingerprint());
    std::stringstream buffer;
    a.save(buffer);
    const auto loaded = Vocabulary::load(buffer);
    EXPECT_EQ(loaded.merges(), a.merges());
    EXPECT_EQ(loaded.size(), a.size());
    EXPECT_EQ(loaded.fingerprint(), a.fingerprint());
    for (const auto &t : texts) EXPECT_EQ(loaded.encode(t), a.encode(t));
}

TEST(Persist, CorruptFilesAreRejected) {
    std::istringstream bad_header("hello\n");
    EXPECT_THROW(Vocabulary::load(bad_header), Error);
    std::istringstream bad_version("luxgen-vocab 7\n");
    try {
        Vocabulary::load(bad_version);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), "version-mismatch");
    }
    std::istringstream truncated("luxgen-vocab 1\nspecials pad=0 eos=1 unk=2\nvocab_size 262\nsentinels 2\nmerges 1\n");
    EXPECT_THROW(Vocabulary::load(truncated), Error);
    std::istringstream wrong_size("luxgen-vocab 1\nspecials pad=0 eos=1 unk=2\nvocab_size 999\nsentinels 2\nmerges 0\n");
    EXPECT_THROW(Vocabulary::load(wrong_size), Error);
}

}  // namespace
}  // namespace luxgen::subword
