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

#include "luxgen/corpus/document.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace luxgen::corpus {

struct StatsRow {
    Language language{Language::other};
    Domain domain{Domain::web};
    std::string source;
    std::uint64_t token_count{0};
    std::uint64_t type_count{0};

    [[nodiscard]] double ttr() const {
        return token_count == 0 ? 0.0 : static_cast<double>(type_count) / static_cast<double>(token_count);
    }
    bool operator==(const StatsRow &) const = default;
};

struct LanguageTotal {
    Language language{Language::other};
    std::uint64_t token_count{0};
    /// Distinct tokens across the language when computed from documents; the
    /// sum of row type counts (an upper bound) when aggregated from rows.
    std::uint64_t type_count{0};
    bool types_exact{true};

    [[nodiscard]] double ttr() const {
        return token_count == 0 ? 0.0 : static_cast<double>(type_count) / static_cast<double>(token_count);
    }
    bool operator==(const LanguageTotal &) const = default;
};

/// Token/type accounting, one row per (language, domain, source) sorted by
/// that key, plus one total per language.
struct CorpusStats {
    std::vector<StatsRow> rows;
    std::vector<LanguageTotal> totals;

    [[nodiscard]] const LanguageTotal *total(Language language) const;
};

CorpusStats count_stats(const std::vector<Document> &docs);

/// Builds per-language totals from rows alone (no access to the tokens).
CorpusStats aggregate_rows(std::vector<StatsRow> rows);

/// Tokens per domain for one language.
std::map<Domain, std::uint64_t> domain_tokens(const CorpusStats &stats, Language language);

double round4(double value);

/// Compares a computed total against a total printed elsewhere; non-empty
/// when they differ by more than `relative_tolerance`.
std::optional<std::string> total_discrepancy(std::uint64_t computed, std::uint64_t printed, double relative_tolerance = 1e-4);

/// Human-readable renderings: domains x languages token table, and the
/// per-source token/type/TTR table for one language.
std::string render_domain_table(const CorpusStats &stats);
std::string render_source_table(const CorpusStats &stats, Language language);

/// Abbreviated count: 17500000 -> "17.5M", 741000 -> "741,000".
std::string abbreviate_count(std::uint64_t n);

}  // namespace luxgen::corpus
