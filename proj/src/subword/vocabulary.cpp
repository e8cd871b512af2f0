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

#include "luxgen/subword/vocabulary.hpp"

#include "luxgen/common/error.hpp"
#include "luxgen/common/files.hpp"
#include "luxgen/common/rng.hpp"
#include "luxgen/common/text.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace luxgen::subword {

namespace {

constexpr std::uint64_t pack(TokenId left, TokenId right) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(left)) << 32) | static_cast<std::uint32_t>(right);
}

constexpr TokenId unpack_left(std::uint64_t key) { return static_cast<TokenId>(key >> 32); }
constexpr TokenId unpack_right(std::uint64_t key) { return static_cast<TokenId>(key & 0xffffffffULL); }

std::vector<std::string> build_surfaces(const std::vector<Merge> &merges) {
    std::vector<std::string> surfaces(Vocabulary::num_specials);
    for (int b = 0; b < 256; ++b) {
        surfaces.emplace_back(1, static_cast<char>(b));
    }
    for (const Merge &m : merges) {
        const auto limit = static_cast<TokenId>(surfaces.size());
        if (m.left < Vocabulary::byte_offset || m.right < Vocabulary::byte_offset || m.left >= limit || m.right >= limit) {
            throw Error("malformed-vocabulary", fmt::format("merge ({}, {}) refers to an unknown piece", m.left, m.right));
        }
        surfaces.push_back(surfaces[m.left] + surfaces[m.right]);
    }
    return surfaces;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<Merge> merges, std::int32_t num_sentinels)
    : merges_(std::move(merges)), surfaces_(build_surfaces(merges_)), num_sentinels_(num_sentinels) {
    if (num_sentinels_ < 0) {
        throw Error("invalid-argument", "negative sentinel count");
    }
    TokenId next = byte_offset + 256;
    for (const Merge &m : merges_) {
        ranks_.emplace(pack(m.left, m.right), next++);
    }
}

const std::string &Vocabulary::surface(TokenId id) const {
    if (id < byte_offset || id >= static_cast<TokenId>(surfaces_.size())) {
        throw Error("invalid-token", fmt::format("token id {} has no surface", id));
    }
    return surfaces_[id];
}

TokenId Vocabulary::merged_id(TokenId left, TokenId right) const {
    const auto it = ranks_.find(pack(left, right));
    return it == ranks_.end() ? -1 : it->second;
}

std::vector<std::string_view> pretokenize(std::string_view text) {
    std::vector<std::string_view> chunks;
    std::size_t start = 0;
    for (std::size_t i = 1; i < text.size(); ++i) {
        if (text[i] == ' ') {
            chunks.push_back(text.substr(start, i - start));
            start = i;
        }
    }
    if (start < text.size()) {
        chunks.push_back(text.substr(start));
    }
    return chunks;
}

void Vocabulary::encode_chunk(std::string_view chunk, std::vector<TokenId> &out) const {
    std::vector<TokenId> symbols;
    symbols.reserve(chunk.size());
    for (const char c : chunk) {
        symbols.push_back(byte_offset + static_cast<unsigned char>(c));
    }
    while (symbols.size() > 1) {
        // lowest merged id == earliest learned merge
        TokenId best = -1;
        for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
            const TokenId m = merged_id(symbols[i], symbols[i + 1]);
            if (m >= 0 && (best < 0 || m < best)) {
                best = m;
            }
        }
        if (best < 0) {
            break;
        }
        const Merge &merge = merges_[static_cast<std::size_t>(best - byte_offset - 256)];
        std::vector<TokenId> next;
        next.reserve(symbols.size());
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (i + 1 < symbols.size() && symbols[i] == merge.left && symbols[i + 1] == merge.right) {
                next.push_back(best);
                ++i;
            } else {
                next.push_back(symbols[i]);
            }
        }
        symbols = std::move(next);
    }
    out.insert(out.end(), symbols.begin(), symbols.end());
}

std::vector<TokenId> Vocabulary::encode(std::string_view text) const {
    std::vector<TokenId> ids;
    ids.reserve(text.size() / 3 + 2);
    for (const std::string_view chunk : pretokenize(text)) {
        encode_chunk(chunk, ids);
    }
    ids.push_back(eos_id);
    return ids;
}

std::string Vocabulary::decode(std::span<const TokenId> ids) const {
    std::string out;
    const std::int32_t total = size();
    const SpecialTokens sp = specials();
    for (std::size_t pos = 0; pos < ids.size(); ++pos) {
        const TokenId id = ids[pos];
        if (id < 0 || id >= total) {
            throw Error("invalid-token", fmt::format("token id {} at position {} is outside [0, {})", id, pos, total));
        }
        if (id == pad_id || id == eos_id) {
            continue;
        }
        if (id == unk_id) {
            out += "<unk>";
        } else if (sp.is_sentinel(id)) {
            out += fmt::format("<extra_{}>", sp.sentinel_index(id));
        } else {
            out += surfaces_[id];
        }
    }
    return out;
}

void Vocabulary::save(std::ostream &out) const {
    out << "luxgen-vocab " << file_version << '\n';
    out << "specials pad=" << pad_id << " eos=" << eos_id << " unk=" << unk_id << '\n';
    out << "vocab_size " << size() << '\n';
    out << "sentinels " << num_sentinels_ << '\n';
    out << "merges " << merges_.size() << '\n';
    TokenId id = byte_offset + 256;
    for (const Merge &m : merges_) {
        out << m.left << ' ' << m.right << '\t' << text::escape_field(surfaces_[id++]) << '\n';
    }
    if (!out) {
        throw Error("write-failed", "failed writing vocabulary");
    }
}

void Vocabulary::save(const std::filesystem::path &path) const {
    files::write_atomic(path, [&](std::ostream &out) { save(out); });
}

Vocabulary Vocabulary::load(std::istream &in) {
    auto fail = [](int line, const std::string &what) -> Error {
        return Error("malformed-vocabulary", fmt::format("vocabulary line {}: {}", line, what));
    };
    std::string line;
    std::string word;
    int version = 0;
    if (!std::getline(in, line) || std::sscanf(line.c_str(), "luxgen-vocab %d", &version) != 1) {
        throw fail(1, "missing header");
    }
    if (version != file_version) {
        throw Error("version-mismatch", fmt::format("vocabulary version {} is not supported", version));
    }
    std::getline(in, line);  // specials (fixed layout)
    int vocab_size = 0;
    int sentinels = 0;
    std::size_t merge_count = 0;
    if (!std::getline(in, line) || std::sscanf(line.c_str(), "vocab_size %d", &vocab_size) != 1) {
        throw fail(3, "missing vocab_size");
    }
    if (!std::getline(in, line) || std::sscanf(line.c_str(), "sentinels %d", &sentinels) != 1) {
        throw fail(4, "missing sentinels");
    }
    if (!std::getline(in, line) || std::sscanf(line.c_str(), "merges %zu", &merge_count) != 1) {
        throw fail(5, "missing merges");
    }
    std::vector<Merge> merges;
    merges.reserve(merge_count);
    for (std::size_t i = 0; i < merge_count; ++i) {
        if (!std::getline(in, line)) {
            throw fail(static_cast<int>(6 + i), "truncated merge list");
        }
        Merge m{};
        if (std::sscanf(line.c_str(), "%d %d", &m.left, &m.right) != 2) {
            throw fail(static_cast<int>(6 + i), "malformed merge");
        }
        merges.push_back(m);
    }
    Vocabulary vocab(std::move(merges), sentinels);
    if (vocab.size() != vocab_size) {
        throw Error("malformed-vocabulary", fmt::format("declared vocab_size {} but merges imply {}", vocab_size, vocab.size()));
    }
    return vocab;
}

Vocabulary Vocabulary::load(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("unreadable-file", "cannot open " + path.string());
    }
    return load(in);
}

std::string Vocabulary::fingerprint() const {
    std::ostringstream out;
    save(out);
    return fmt::format("{:016x}", fnv1a(out.str()));
}

Vocabulary train_vocab(std::span<const std::string> texts, std::int32_t vocab_size, std::int32_t num_sentinels) {
    if (num_sentinels < 0) {
        throw Error("invalid-argument", "negative sentinel count");
    }
    if (vocab_size < minimum_vocab_size(num_sentinels)) {
        throw Error("invalid-argument", fmt::format("vocab_size {} is below the minimum {} (256 bytes + {} specials + {} sentinels)",
                                                    vocab_size, minimum_vocab_size(num_sentinels),
                                                    Vocabulary::num_specials, num_sentinels));
    }
    std::map<std::string, std::uint64_t> chunk_counts;
    for (const std::string &t : texts) {
        for (const std::string_view chunk : pretokenize(t)) {
            ++chunk_counts[std::string(chunk)];
        }
    }
    if (chunk_counts.empty()) {
        throw Error("empty-corpus", "cannot train a vocabulary on an empty corpus");
    }

    struct Word {
        std::vector<TokenId> symbols;
        std::uint64_t freq;
    };
    std::vector<Word> words;
    words.reserve(chunk_counts.size());
    for (const auto &[chunk, count] : chunk_counts) {
        Word w{{}, count};
        for (const char c : chunk) {
            w.symbols.push_back(Vocabulary::byte_offset + static_cast<unsigned char>(c));
        }
        words.push_back(std::move(w));
    }

    std::vector<std::string> surfaces(Vocabulary::num_specials);
    for (int b = 0; b < 256; ++b) {
        surfaces.emplace_back(1, static_cast<char>(b));
    }

    // candidate order: count desc, then (left surface, right surface) asc
    auto better = [&surfaces](const std::pair<std::uint64_t, std::uint64_t> &a,
                              const std::pair<std::uint64_t, std::uint64_t> &b) {
        if (a.first != b.first) {
            return a.first > b.first;
        }
        const std::string &al = surfaces[unpack_left(a.second)];
        const std::string &bl = surfaces[unpack_left(b.second)];
        if (al != bl) {
            return al < bl;
        }
        const std::string &ar = surfaces[unpack_right(a.second)];
        const std::string &br = surfaces[unpack_right(b.second)];
        if (ar != br) {
            return ar < br;
        }
        return a.second < b.second;
    };
    std::set<std::pair<std::uint64_t, std::uint64_t>, decltype(better)> queue(better);
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> occurrences;

    auto adjust = [&](std::uint64_t key, std::int64_t delta) {
        std::uint64_t &count = counts[key];
        if (count > 0) {
            queue.erase({count, key});
        }
        count = static_cast<std::uint64_t>(static_cast<std::int64_t>(count) + delta);
        if (count > 0) {
            queue.insert({count, key});
        }
    };
    auto add_word = [&](std::uint32_t w, std::int64_t sign) {
        const Word &word = words[w];
        for (std::size_t i = 0; i + 1 < word.symbols.size(); ++i) {
            const std::uint64_t key = pack(word.symbols[i], word.symbols[i + 1]);
            adjust(key, sign * static_cast<std::int64_t>(word.freq));
            if (sign > 0) {
                occurrences[key].push_back(w);
            }
        }
    };
    for (std::uint32_t w = 0; w < words.size(); ++w) {
        add_word(w, +1);
    }

    const std::int32_t target_merges = vocab_size - num_sentinels - Vocabulary::num_specials - 256;
    std::vector<Merge> merges;
    std::vector<std::uint32_t> touched;
    while (static_cast<std::int32_t>(merges.size()) < target_merges && !queue.empty()) {
        const std::uint64_t key = queue.begin()->second;
        const TokenId left = unpack_left(key);
        const TokenId right = unpack_right(key);
        const auto merged = static_cast<TokenId>(surfaces.size());
        merges.push_back({left, right});
        surfaces.push_back(surfaces[left] + surfaces[right]);

        touched = std::move(occurrences[key]);
        occurrences.erase(key);
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (const std::uint32_t w : touched) {
            Word &word = words[w];
            bool present = false;
            for (std::size_t i = 0; i + 1 < word.symbols.size(); ++i) {
                if (word.symbols[i] == left && word.symbols[i + 1] == right) {
                    present = true;
                    break;
                }
            }
            if (!present) {
                continue;
            }
            add_word(w, -1);
            std::vector<TokenId> next;
            next.reserve(word.symbols.size());
            for (std::size_t i = 0; i < word.symbols.size(); ++i) {
                if (i + 1 < word.symbols.size() && word.symbols[i] == left && word.symbols[i + 1] == right) {
                    next.push_back(merged);
                    ++i;
                } else {
                    next.push_back(word.symbols[i]);
                }
            }
            word.symbols = std::move(next);
            add_word(w, +1);
        }
    }
    return Vocabulary(std::move(merges), num_sentinels);
}

}  // namespace luxgen::subword
