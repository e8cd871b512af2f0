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

#include <string_view>

namespace luxgen {

/// Natural order over record ids of the form "<prefix>-<number>": prefixes
/// compare as bytes, numeric suffixes compare as numbers ("x-9" < "x-10").
/// Ids without a numeric suffix compare as plain strings.
bool id_less(std::string_view a, std::string_view b);

struct IdLess {
    bool operator()(std::string_view a, std::string_view b) const { return id_less(a, b); }
};

}  // namespace luxgen
