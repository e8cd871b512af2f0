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
#include "luxgen/common/id_order.hpp"
#include "luxgen/common/rng.hpp"
#include "luxgen/common/text.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace luxgen {
namespace {

TEST(Rng, MatchesStandardEngineStream) {
    Rng rng(5489);
    std::mt19937_64 reference(5489);
    for (int i = 0; i < 1000; ++i) {
        ASSERT_EQ(rng.next_u64(), reference());
    }
    // first output of the default-seeded 64-bit Mersenne twister
    EXPECT_EQ(Rng(5489).next_u64(), 14514284786278117030ULL);
}

TEST(Rng, UniformAndBelowStayInRange) {
    Rng rng(3);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        ASSERT_LT(rng.below(7), 7U);
    }
    EXPECT_EQ(Rng(1).below(1), 0U);
}

TEST(Rng, BelowIsRoughlyUniform) {
    Rng rng(11);
    std::vector<int> counts(10);
    const int n = 100000;
    for (int i = 0; i < n; ++i) ++counts[rng.below(10)];
    for (int c : counts) {
        EXPECT_NEAR(c, n / 10, 5 * std::sqrt(n * 0.1 * 0.9));
    }
}

TEST(Rng, ShuffleIsAPermutationAndDeterministic) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        std::vector<int> a(37);
        std::iota(a.begin(), a.end(), 0);
        auto b = a;
        Rng r1(seed), r2(seed);
        r1.shuffle(a);
        r2.shuffle(b);
        EXPECT_EQ(a, b);
        auto sorted = a;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < 37; ++i) ASSERT_EQ(sorted[i], i);
    }
}

TEST(Rng, StateRoundTripResumesStream) {
    Rng rng(42);
    for (int i = 0; i < 17; ++i) rng.next_u64();
    const std::string saved = rng.state();
    std::vector<std::uint64_t> expected;
    for (int i = 0; i < 10; ++i) expected.push_back(rng.next_u64());
    Rng other(0);
    other.restore(saved);
    for (auto v : expected) EXPECT_EQ(other.next_u64(), v);
}

TEST(Seeds, Fnv1aKnownVectors) {
    EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(fnv1a("foobar"), 0x85944171f73967e8ULL);
}

TEST(Seeds, DerivedSeedsDifferPerLabelAndMaster) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t master : {0ULL, 1ULL, 2ULL}) {
        for (const char *label : {"ingest", "balance", "pretrain", "finetune", "init"}) {
            EXPECT_TRUE(seen.insert(derive_seed(master, label)).second);
        }
    }
    EXPECT_EQ(derive_seed(9, "x"), derive_seed(9, "x"));
}

// Reference results computed with an independent Unicode implementation.
TEST(Normalize, FrozenCompositionTable) {
    const std::pair<const char *, const char *> table[] = {
        {"\x61\xcc\x81", "\xc3\xa1"},
        {"\x65\xcc\x88", "\xc3\xab"},
        {"\x41\xcc\x8a", "\xc3\x85"},
        {"\x75\xcc\x88", "\xc3\xbc"},
        {"\x6e\xcc\x83", "\xc3\xb1"},
        {"\x63\xcc\xa7", "\xc3\xa7"},
        {"\xe1\xba\x9b\xcc\xa3", "\xe1\xba\x9b\xcc\xa3"},
        {"\x6f\xcc\x82\xcc\x81", "\xe1\xbb\x91"},
        {"\xe2\x84\xab", "\xc3\x85"},
        {"\xe2\x84\xa6", "\xce\xa9"},
        {"\x4c\x65\xcc\x81\x74\x7a\x65\x62\x75\x65\x72\x67", "\x4c\xc3\xa9\x74\x7a\x65\x62\x75\x65\x72\x67"},
        {"\x45\xcc\x81\x20\x65\xcc\x81", "\xc3\x89\x20\xc3\xa9"},
        {"\xea\xb0\x80", "\xea\xb0\x80"},
        {"\xe1\x84\x80\xe1\x85\xa1", "\xea\xb0\x80"},
        {"\x41\xcc\x80\xcc\x81", "\xc3\x80\xcc\x81"},
        {"\x71\xcc\x87\xcc\xa3", "\x71\xcc\xa3\xcc\x87"},
    };
    for (const auto &[raw, expected] : table) {
        EXPECT_EQ(text::normalize(raw), expected) << raw;
    }
}

TEST(Normalize, WhitespaceAndControls) {
    EXPECT_EQ(text::normalize("  a \t\n b  "), "a b");
    EXPECT_EQ(text::normalize("a\x01" "b\x7f" "c"), "abc");
    EXPECT_EQ(text::normalize("a\xc2\xa0" "b"), "a b");  // no-break space is whitespace
    EXPECT_EQ(text::normalize(""), "");
    EXPECT_EQ(text::normalize("\xff"), "\xef\xbf\xbd");
}

TEST(Normalize, IsIdempotent) {
    Rng rng(5);
    const char *pieces[] = {"a", "e\xcc\x81", " ", "\t", "\xc3\xa9", "Z", ".", "\xe2\x84\xab", "\n", "q\xcc\x87\xcc\xa3"};
    for (int i = 0; i < 500; ++i) {
        std::string s;
        const auto len = rng.below(20);
        for (std::uint64_t k = 0; k < len; ++k) s += pieces[rng.below(std::size(pieces))];
        const std::string once = text::normalize(s);
        EXPECT_EQ(text::normalize(once), once);
        EXPECT_TRUE(text::is_valid_utf8(once));
    }
}

TEST(Tokenize, DetachesPunctuation) {
    EXPECT_EQ(text::tokenize("a a b"), (std::vector<std::string>{"a", "a", "b"}));
    EXPECT_EQ(text::tokenize("Moien, Welt!"), (std::vector<std::string>{"Moien", ",", "Welt", "!"}));
    EXPECT_EQ(text::tokenize("d'Kanner"), (std::vector<std::string>{"d", "'", "Kanner"}));
    EXPECT_EQ(text::tokenize("  "), std::vector<std::string>{});
    EXPECT_EQ(text::tokenize("\xc2\xab" "Lëtzebuerg" "\xc2\xbb"),
              (std::vector<std::string>{"\xc2\xab", "Lëtzebuerg", "\xc2\xbb"}));
}

TEST(Tokenize, CountMatchesTokenize) {
    Rng rng(8);
    const char *pieces[] = {"word", " ", ",", "x", ".", "  ", "\xc3\xa9", "!?", "-"};
    for (int i = 0; i < 300; ++i) {
        std::string s;
        const auto len = rng.below(15);
        for (std::uint64_t k = 0; k < len; ++k) s += pieces[rng.below(std::size(pieces))];
        EXPECT_EQ(text::count_tokens(s), text::tokenize(s).size()) << s;
    }
}

TEST(Fields, EscapeRoundTrip) {
    Rng rng(13);
    const char alphabet[] = {'a', '\t', '\n', '\r', '\\', 'n', 't', ' '};
    for (int i = 0; i < 500; ++i) {
        std::string s;
        const auto len = rng.below(12);
        for (std::uint64_t k = 0; k < len; ++k) s += alphabet[rng.below(sizeof alphabet)];
        const std::string e = text::escape_field(s);
        EXPECT_EQ(e.find('\t'), std::string::npos);
        EXPECT_EQ(e.find('\n'), std::string::npos);
        EXPECT_EQ(text::unescape_field(e), s);
    }
}

TEST(Fields, SplitKeepsEmptyFields) {
    const auto f = text::split("a\t\tb\t", '\t');
    ASSERT_EQ(f.size(), 4U);
    EXPECT_EQ(f[0], "a");
    EXPECT_EQ(f[1], "");
    EXPECT_EQ(f[2], "b");
    EXPECT_EQ(f[3], "");
}

TEST(IdOrder, NumericSuffixesCompareAsNumbers) {
    EXPECT_TRUE(id_less("x-9", "x-10"));
    EXPECT_FALSE(id_less("x-10", "x-9"));
    EXPECT_TRUE(id_less("a-100", "b-1"));
    EXPECT_FALSE(id_less("x-1", "x-1"));
    EXPECT_TRUE(id_less("plain", "zzz"));
}

TEST(IdOrder, IsAStrictWeakOrder) {
    Rng rng(21);
    std::vector<std::string> ids;
    const char *prefixes[] = {"a", "news-lb", "news-de", "x", "news"};
    for (int i = 0; i < 60; ++i) {
        std::string id = prefixes[rng.below(std::size(prefixes))];
        if (rng.below(5)) id += "-" + std::to_string(rng.below(200));
        ids.push_back(id);
    }
    for (const auto &a : ids) {
        EXPECT_FALSE(id_less(a, a));
        for (const auto &b : ids) {
            if (id_less(a, b)) {
                EXPECT_FALSE(id_less(b, a)) << a << " " << b;
            }
            for (const auto &c : ids) {
                if (id_less(a, b) && id_less(b, c)) {
                    EXPECT_TRUE(id_less(a, c)) << a << " " << b << " " << c;
                }
            }
        }
    }
}

}  // namespace
}  // namespace luxgen
