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

#include "luxgen/common/id_order.hpp"

#include <cstddef>

namespace luxgen {

namespace {

struct SplitId {
    std::string_view prefix;
    std::string_view digits;  // empty when the id has no numeric suffix
};

SplitId split_id(std::string_view id) {
    const std::size_t dash = id.rfind('-');
    if (dash == std::string_view::npos || dash + 1 == id.size()) {
        return {id, {}};
    }
    const std::string_view tail = id.substr(dash + 1);
    for (const char c : tail) {
        if (c < '0' || c > '9') {
            return {id, {}};
        }
    }
    return {id.substr(0, dash), tail};
}

std::string_view strip_leading_zeros(std::string_view digits) {
    while (digits.size() > 1 && digits.front() == '0') {
        digits.remove_prefix(1);
    }
    return digits;
}

}  // namespace

bool id_less(std::string_view a, std::string_view b) {
    // key: (prefix, has numeric suffix, numeric value, raw id)
    const SplitId sa = split_id(a);
    const SplitId sb = split_id(b);
    if (sa.prefix != sb.prefix) {
        return sa.prefix < sb.prefix;
    }
    if (sa.digits.empty() != sb.digits.empty()) {
        return sa.digits.empty();
    }
    const std::string_view da = strip_leading_zeros(sa.digits);
    const std::string_view db = strip_leading_zeros(sb.digits);
    if (da.size() != db.size()) {
        return da.size() < db.size();
    }
    if (da != db) {
        return da < db;
    }
    return a < b;
}

}  // namespace luxgen
