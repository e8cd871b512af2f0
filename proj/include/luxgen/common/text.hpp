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

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace luxgen::text {

/// Canonical composition (NFC), control characters stripped, every run of
/// whitespace collapsed to one ASCII space, leading/trailing space removed.
/// Spelling is never touched. Invalid UTF-8 sequences are replaced by U+FFFD.
std::string normalize(std::string_view raw);

/// The toolkit-wide word tokenizer: whitespace split, then every punctuation
/// code point detached as its own token. Case is preserved.
std::vector<std::string> tokenize(std::string_view text);

/// Visits each token as a view into `text`.
void for_each_token(std::string_view text, const std::function<void(std::string_view)> &visit);

/// Same as tokenize(text).size() without materializing tokens.
std::size_t count_tokens(std::string_view text);

[[nodiscard]] bool is_valid_utf8(std::string_view bytes);

/// Tab-separated field escaping (\t, \n, \r and backslash).
std::string escape_field(std::string_view field);
std::string unescape_field(std::string_view field);

/// Splits on a single-character delimiter, keeping empty fields.
std::vector<std::string_view> split(std::string_view line, char delimiter);

}  // namespace luxgen::text
