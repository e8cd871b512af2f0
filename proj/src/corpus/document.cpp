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

#include "luxgen/corpus/document.hpp"

#include "luxgen/common/error.hpp"

#include <array>
#include <utility>

namespace luxgen::corpus {

namespace {

constexpr std::array<std::pair<Language, std::string_view>, 4> language_names{{
    {Language::lb, "lb"}, {Language::de, "de"}, {Language::fr, "fr"}, {Language::other, "other"}}};

constexpr std::array<std::pair<Domain, std::string_view>, 8> domain_names{{{Domain::radio, "radio"},
                                                                            {Domain::news, "news"},
                                                                            {Domain::parliament, "parliament"},
                                                                            {Domain::web, "web"},
                                                                            {Domain::wiki, "wiki"},
                                                                            {Domain::comments, "comments"},
                                                                            {Domain::chat, "chat"},
                                                                            {Domain::dictionary, "dictionary"}}};

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N> &table, Enum value) {
    for (const auto &[v, name] : table) {
        if (v == value) {
            return name;
        }
    }
    return "?";
}

template <typename Enum, std::size_t N>
Enum parse(const std::array<std::pair<Enum, std::string_view>, N> &table, std::string_view name, std::string_view what) {
    for (const auto &[v, n] : table) {
        if (n == name) {
            return v;
        }
    }
    throw Error("unknown-enum", "unknown " + std::string(what) + " '" + std::string(name) + "'");
}

}  // namespace

std::string_view to_string(Language language) { return name_of(language_names, language); }
std::string_view to_string(Domain domain) { return name_of(domain_names, domain); }
std::string_view to_string(ModerationStatus status) {
    return status == ModerationStatus::archived ? "archived" : "published";
}

Language parse_language(std::string_view name) { return parse(language_names, name, "language"); }
Domain parse_domain(std::string_view name) { return parse(domain_names, name, "domain"); }
ModerationStatus parse_moderation_status(std::string_view name) {
    if (name == "archived") {
        return ModerationStatus::archived;
    }
    if (name == "published") {
        return ModerationStatus::published;
    }
    throw Error("unknown-enum", "unknown moderation status '" + std::string(name) + "'");
}

}  // namespace luxgen::corpus
