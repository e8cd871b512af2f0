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

#include "luxgen/corpus/stats.hpp"

#include "luxgen/common/text.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string_view>
#include <tuple>
#include <unordered_set>

namespace luxgen::corpus {

namespace {

using RowKey = std::tuple<Language, Domain, std::string>;

// string_view keys point into the documents, which outlive the sets
using TypeSet = std::unordered_set<std::string_view>;

}  // namespace

const LanguageTotal *CorpusStats::total(Language language) const {
    for (const LanguageTotal &t : totals) {
        if (t.language == language) {
            return &t;
        }
    }
    return nullptr;
}

CorpusStats count_stats(const std::vector<Document> &docs) {
    struct Accumulator {
        std::uint64_t tokens{0};
        TypeSet types;
    };
    std::map<RowKey, Accumulator> rows;
    std::map<Language, Accumulator> languages;
    for (const Document &doc : docs) {
        Accumulator &row = rows[{doc.language, doc.domain, doc.source}];
        Accumulator &lang = languages[doc.language];
        text::for_each_token(doc.text, [&](std::string_view token) {
            ++row.tokens;
            ++lang.tokens;
            row.types.insert(token);
            lang.types.insert(token);
        });
    }
    CorpusStats stats;
    for (const auto &[key, acc] : rows) {
        stats.rows.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), acc.tokens, acc.types.size()});
    }
    for (const auto &[language, acc] : languages) {
        stats.totals.push_back({language, acc.tokens, acc.types.size(), true});
    }
    return stats;
}

CorpusStats aggregate_rows(std::vector<StatsRow> rows) {
    std::sort(rows.begin(), rows.end(), [](const StatsRow &a, const StatsRow &b) {
        return std::tie(a.language, a.domain, a.source) < std::tie(b.language, b.domain, b.source);
    });
    std::map<Language, LanguageTotal> totals;
    for (const StatsRow &row : rows) {
        LanguageTotal &t = totals[row.language];
        t.language = row.language;
        t.token_count += row.token_count;
        t.type_count += row.type_count;
        t.types_exact = false;
    }
    CorpusStats stats;
    stats.rows = std::move(rows);
    for (auto &[language, total] : totals) {
        stats.totals.push_back(total);
    }
    return stats;
}

std::map<Domain, std::uint64_t> domain_tokens(const CorpusStats &stats, Language language) {
    std::map<Domain, std::uint64_t> out;
    for (const StatsRow &row : stats.rows) {
        if (row.language == language) {
            out[row.domain] += row.token_count;
        }
    }
    return out;
}

double round4(double value) { return std::round(value * 1e4) / 1e4; }

std::optional<std::string> total_discrepancy(std::uint64_t computed, std::uint64_t printed, double relative_tolerance) {
    const double diff = std::abs(static_cast<double>(computed) - static_cast<double>(printed));
    const double scale = std::max(1.0, static_cast<double>(printed));
    if (diff / scale <= relative_tolerance) {
        return std::nullopt;
    }
    return fmt::format("computed total {} differs from printed total {} by {}", computed, printed,
                       static_cast<std::int64_t>(computed) - static_cast<std::int64_t>(printed));
}

std::string abbreviate_count(std::uint64_t n) {
    if (n >= 1'000'000) {
        const double m = static_cast<double>(n) / 1e6;
        std::string s = fmt::format("{:.2f}", m);
        // trim trailing zeros: 17.50 -> 17.5, 40.00 -> 40.0
        while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') {
            s.pop_back();
        }
        return s + "M";
    }
    std::string digits = std::to_string(n);
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i != 0 && (digits.size() - i) % 3 == 0) {
            out.push_back(',');
        }
        out.push_back(digits[i]);
    }
    return out;
}

std::string render_domain_table(const CorpusStats &stats) {
    std::set<Language> languages;
    std::set<Domain> domains;
    for (const StatsRow &row : stats.rows) {
        languages.insert(row.language);
        domains.insert(row.domain);
    }
    std::string out = fmt::format("{:<12}", "Domain");
    for (const Language l : languages) {
        out += fmt::format("{:>12}", to_string(l));
    }
    out += '\n';
    std::map<Language, std::map<Domain, std::uint64_t>> cells;
    for (const Language l : languages) {
        cells[l] = domain_tokens(stats, l);
    }
    for (const Domain d : domains) {
        out += fmt::format("{:<12}", to_string(d));
        for (const Language l : languages) {
            const auto it = cells[l].find(d);
            out += fmt::format("{:>12}", it == cells[l].end() ? std::string("-") : abbreviate_count(it->second));
        }
        out += '\n';
    }
    out += fmt::format("{:<12}", "Total");
    for (const Language l : languages) {
        const LanguageTotal *t = stats.total(l);
        out += fmt::format("{:>12}", abbreviate_count(t ? t->token_count : 0));
    }
    out += '\n';
    return out;
}

std::string render_source_table(const CorpusStats &stats, Language language) {
    std::string out = fmt::format("{:<24}{:>12}{:>12}{:>8}\n", "Resource", "Tokens", "Types", "TTR");
    for (const StatsRow &row : stats.rows) {
        if (row.language != language) {
            continue;
        }
        out += fmt::format("{:<24}{:>12}{:>12}{:>8.4f}\n", row.source, abbreviate_count(row.token_count),
                           abbreviate_count(row.type_count), round4(row.ttr()));
    }
    if (const LanguageTotal *t = stats.total(language)) {
        out += fmt::format("{:<24}{:>12}{:>12}{:>8.4f}\n", "Total", abbreviate_count(t->token_count),
                           abbreviate_count(t->type_count), round4(t->ttr()));
    }
    return out;
}

}  // namespace luxgen::corpus
