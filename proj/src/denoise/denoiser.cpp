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

#include "luxgen/denoise/denoiser.hpp"

#include "luxgen/common/error.hpp"
#include "luxgen/common/files.hpp"

#include <fmt/format.h>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace luxgen::denoise {

namespace {

void check_ids(std::span<const TokenId> ids, const SpecialTokens &specials) {
    if (ids.empty()) {
        throw Error("invalid-argument", "cannot corrupt an empty sequence");
    }
    for (const TokenId id : ids) {
        if (specials.is_sentinel(id)) {
            throw Error("invalid-argument", fmt::format("input already contains sentinel id {}", id));
        }
    }
}

}  // namespace

DenoisedPair corrupt_with_mask(std::span<const TokenId> ids, const std::vector<bool> &dropped,
                               const SpecialTokens &specials) {
    check_ids(ids, specials);
    if (dropped.size() != ids.size()) {
        throw Error("invalid-argument", "drop mask length differs from sequence length");
    }
    DenoisedPair pair;
    std::int32_t next_sentinel = 0;
    bool in_run = false;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const bool drop = dropped[i] && (in_run || next_sentinel < specials.num_sentinels);
        if (!drop) {
            in_run = false;
            pair.input_ids.push_back(ids[i]);
            continue;
        }
        if (!in_run) {
            const TokenId sentinel = specials.sentinel(next_sentinel++);
            pair.input_ids.push_back(sentinel);
            pair.target_ids.push_back(sentinel);
            in_run = true;
        }
        pair.target_ids.push_back(ids[i]);
    }
    pair.input_ids.push_back(specials.eos);
    pair.target_ids.push_back(specials.eos);
    return pair;
}

DenoisedPair corrupt(std::span<const TokenId> ids, double rate, Rng &rng, const SpecialTokens &specials) {
    if (!(rate >= 0.0 && rate < 1.0)) {
        throw Error("invalid-argument", fmt::format("drop rate must lie in [0, 1), got {}", rate));
    }
    std::vector<bool> dropped(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        dropped[i] = rng.uniform() < rate;
    }
    return corrupt_with_mask(ids, dropped, specials);
}

std::vector<TokenId> reconstruct(const DenoisedPair &pair, const SpecialTokens &specials) {
    const auto &in = pair.input_ids;
    const auto &tg = pair.target_ids;
    if (in.empty() || in.back() != specials.eos || tg.empty() || tg.back() != specials.eos) {
        throw Error("sentinel-mismatch", "input and target must both end with eos");
    }
    // spans[k] = [begin, end) into target for sentinel k
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (std::size_t i = 0; i + 1 < tg.size();) {
        if (!specials.is_sentinel(tg[i]) || specials.sentinel_index(tg[i]) != static_cast<std::int32_t>(spans.size())) {
            throw Error("sentinel-mismatch", fmt::format("target position {} should hold sentinel {}", i, spans.size()));
        }
        std::size_t j = i + 1;
        while (j + 1 < tg.size() && !specials.is_sentinel(tg[j])) {
            ++j;
        }
        spans.emplace_back(i + 1, j);
        i = j;
    }
    std::vector<TokenId> out;
    std::size_t used = 0;
    for (std::size_t i = 0; i + 1 < in.size(); ++i) {
        if (!specials.is_sentinel(in[i])) {
            out.push_back(in[i]);
            continue;
        }
        const auto k = static_cast<std::size_t>(specials.sentinel_index(in[i]));
        if (k != used || k >= spans.size()) {
            throw Error("sentinel-mismatch", fmt::format("input sentinel {} at position {} has no matching target span", k, i));
        }
        out.insert(out.end(), tg.begin() + static_cast<std::ptrdiff_t>(spans[k].first),
                   tg.begin() + static_cast<std::ptrdiff_t>(spans[k].second));
        ++used;
    }
    if (used != spans.size()) {
        throw Error("sentinel-mismatch", fmt::format("target has {} spans but input has {} sentinels", spans.size(), used));
    }
    return out;
}

std::size_t dropped_count(const DenoisedPair &pair, const SpecialTokens &specials) {
    std::size_t n = 0;
    for (std::size_t i = 0; i + 1 < pair.target_ids.size(); ++i) {
        if (!specials.is_sentinel(pair.target_ids[i])) {
            ++n;
        }
    }
    return n;
}

std::vector<Batch> make_batches(const std::vector<DenoisedPair> &pairs, std::size_t max_len, std::size_t batch_size,
                                const SpecialTokens &specials) {
    if (max_len < 2) {
        throw Error("invalid-argument", "max_len must be at least 2");
    }
    if (batch_size == 0) {
        throw Error("invalid-argument", "batch_size must be positive");
    }
    std::vector<Batch> batches;
    for (std::size_t start = 0; start < pairs.size(); start += batch_size) {
        std::vector<const SequencePair *> group;
        for (std::size_t i = start; i < std::min(pairs.size(), start + batch_size); ++i) {
            group.push_back(&pairs[i]);
        }
        batches.push_back(make_batch(group, max_len, specials.pad, specials.eos));
    }
    return batches;
}

void write_pairs(std::ostream &out, const std::vector<DenoisedPair> &pairs) {
    out << "luxgen-pairs 1 " << pairs.size() << '\n';
    auto write_ids = [&](const std::vector<TokenId> &ids) {
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (i != 0) {
                out << ' ';
            }
            out << ids[i];
        }
    };
    for (const DenoisedPair &p : pairs) {
        write_ids(p.input_ids);
        out << '\t';
        write_ids(p.target_ids);
        out << '\n';
    }
}

void write_pairs(const std::filesystem::path &path, const std::vector<DenoisedPair> &pairs) {
    files::write_atomic(path, [&](std::ostream &out) { write_pairs(out, pairs); });
}

std::vector<DenoisedPair> read_pairs(std::istream &in) {
    std::string line;
    std::size_t count = 0;
    int version = 0;
    if (!std::getline(in, line) || std::sscanf(line.c_str(), "luxgen-pairs %d %zu", &version, &count) != 2) {
        throw Error("malformed-pairs", "pair file line 1: missing header");
    }
    if (version != 1) {
        throw Error("version-mismatch", fmt::format("pair file version {} is not supported", version));
    }
    auto parse_ids = [](std::string_view field, std::size_t line_number) {
        std::vector<TokenId> ids;
        std::istringstream s{std::string(field)};
        TokenId id = 0;
        while (s >> id) {
            ids.push_back(id);
        }
        if (!s.eof()) {
            throw Error("malformed-pairs", fmt::format("pair file line {}: malformed id list", line_number));
        }
        return ids;
    };
    std::vector<DenoisedPair> pairs;
    pairs.reserve(count);
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw Error("malformed-pairs", fmt::format("pair file line {}: missing tab separator", line_number));
        }
        pairs.push_back({parse_ids(std::string_view(line).substr(0, tab), line_number),
                         parse_ids(std::string_view(line).substr(tab + 1), line_number)});
    }
    if (pairs.size() != count) {
        throw Error("malformed-pairs", fmt::format("pair file truncated: expected {} records, found {}", count, pairs.size()));
    }
    return pairs;
}

std::vector<DenoisedPair> read_pairs(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("unreadable-file", "cannot open " + path.string());
    }
    return read_pairs(in);
}

}  // namespace luxgen::denoise
