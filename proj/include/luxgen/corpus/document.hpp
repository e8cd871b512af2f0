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
#include <optional>
#include <string>
#include <string_view>

namespace luxgen::corpus {

enum class Language { lb, de, fr, other };
enum class Domain { radio, news, parliament, web, wiki, comments, chat, dictionary };
enum class ModerationStatus { archived, published };

std::string_view to_string(Language language);
std::string_view to_string(Domain domain);
std::string_view to_string(ModerationStatus status);

/// Throw luxgen::Error("unknown-enum") on unrecognized names.
Language parse_language(std::string_view name);
Domain parse_domain(std::string_view name);
ModerationStatus parse_moderation_status(std::string_view name);

inline constexpr Domain all_domains[] = {Domain::radio, Domain::news,     Domain::parliament, Domain::web,
                                         Domain::wiki,  Domain::comments, Domain::chat,       Domain::dictionary};

struct DocumentMeta {
    std::optional<std::int64_t> upvotes;
    std::optional<std::int64_t> downvotes;
    std::optional<std::string> article_id;
    std::optional<ModerationStatus> moderation_status;
    std::optional<std::string> title;
    std::optional<std::string> short_description;

    bool operator==(const DocumentMeta &) const = default;
};

struct Document {
    std::string id;
    std::string text;
    Language language{Language::other};
    Domain domain{Domain::web};
    std::string source;
    DocumentMeta meta;

    bool operator==(const Document &) const = default;
};

}  // namespace luxgen::corpus
