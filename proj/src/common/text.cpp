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

#include "luxgen/common/text.hpp"

#include "luxgen/common/error.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace luxgen::text {

namespace {

const icu::Normalizer2 &nfc() {
    static const icu::Normalizer2 *instance = [] {
        UErrorCode status = U_ZERO_ERROR;
        const icu::Normalizer2 *n = icu::Normalizer2::getNFCInstance(status);
        if (U_FAILURE(status) || n == nullptr) {
            throw Error("unicode", "ICU NFC normalizer unavailable");
        }
        return n;
    }();
    return *instance;
}

bool is_space(UChar32 c) { return u_isUWhiteSpace(c) != 0; }

bool is_punct(UChar32 c) { return u_ispunct(c) != 0; }

// Walks `text` by code point, calling fn(code_point, byte_offset, byte_length).
template <typename Fn>
void for_each_code_point(std::string_view text, Fn &&fn) {
    const auto *bytes = reinterpret_cast<const std::uint8_t *>(text.data());
    const auto length = static_cast<std::int32_t>(text.size());
    std::int32_t i = 0;
    while (i < length) {
        const std::int32_t start = i;
        UChar32 c = 0;
        U8_NEXT(bytes, i, length, c);
        fn(c, static_cast<std::size_t>(start), static_cast<std::size_t>(i - start));
    }
}

// Calls emit(token_view) for each statistics token.
template <typename Emit>
void scan_tokens(std::string_view text, Emit &&emit) {
    std::size_t word_start = std::string_view::npos;
    auto flush = [&](std::size_t end) {
        if (word_start != std::string_view::npos && end > word_start) {
            emit(text.substr(word_start, end - word_start));
        }
        word_start = std::string_view::npos;
    };
    for_each_code_point(text, [&](UChar32 c, std::size_t offset, std::size_t len) {
        if (c < 0 || is_space(c)) {
            flush(offset);
        } else if (is_punct(c)) {
            flush(offset);
            emit(text.substr(offset, len));
        } else if (word_start == std::string_view::npos) {
            word_start = offset;
        }
    });
    flush(text.size());
}

}  // namespace

std::string normalize(std::string_view raw) {
    const icu::UnicodeString source = icu::UnicodeString::fromUTF8(icu::StringPiece(raw.data(), static_cast<std::int32_t>(raw.size())));
    UErrorCode status = U_ZERO_ERROR;
    const icu::UnicodeString composed = nfc().normalize(source, status);
    if (U_FAILURE(status)) {
        throw Error("unicode", "NFC normalization failed");
    }
    std::string utf8;
    composed.toUTF8String(utf8);

    std::string out;
    out.reserve(utf8.size());
    bool pending_space = false;
    for_each_code_point(utf8, [&](UChar32 c, std::size_t offset, std::size_t len) {
        if (is_space(c)) {
            pending_space = !out.empty();
            return;
        }
        if (u_charType(c) == U_CONTROL_CHAR) {
            return;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.append(utf8, offset, len);
    });
    return out;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    scan_tokens(text, [&](std::string_view token) { tokens.emplace_back(token); });
    return tokens;
}

void for_each_token(std::string_view text, const std::function<void(std::string_view)> &visit) {
    scan_tokens(text, visit);
}

std::size_t count_tokens(std::string_view text) {
    std::size_t count = 0;
    scan_tokens(text, [&](std::string_view) { ++count; });
    return count;
}

bool is_valid_utf8(std::string_view bytes) {
    bool valid = true;
    for_each_code_point(bytes, [&](UChar32 c, std::size_t, std::size_t) {
        if (c < 0) {
            valid = false;
        }
    });
    return valid;
}

std::string escape_field(std::string_view field) {
    std::string out;
    out.reserve(field.size());
    for (const char c : field) {
        switch (c) {
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\\': out += "\\\\"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string unescape_field(std::string_view field) {
    std::string out;
    out.reserve(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (field[i] == '\\' && i + 1 < field.size()) {
            ++i;
            switch (field[i]) {
                case 't': out.push_back('\t'); break;
                case 'n': out.push_back('\n'); break;
                case 'r': out.push_back('\r'); break;
                case '\\': out.push_back('\\'); break;
                default:
                    out.push_back('\\');
                    out.push_back(field[i]);
            }
        } else {
            out.push_back(field[i]);
        }
    }
    return out;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace luxgen::text
