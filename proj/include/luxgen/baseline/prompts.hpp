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

#include "luxgen/tasks/tasks.hpp"

#include <string>
#include <string_view>

namespace luxgen::baseline {

/// `base`: the instruction set used with the first prompted model;
/// `return_only`: the variant whose instructions end with an explicit
/// "Only return ..." sentence.
enum class PromptFlavor { base, return_only };

std::string_view to_string(PromptFlavor flavor);
/// Accepts "base" / "a" and "return_only" / "b". Throws Error("unknown-flavor").
PromptFlavor parse_flavor(std::string_view name);

struct PromptTemplate {
    tasks::TaskKind task{tasks::TaskKind::headline};
    PromptFlavor flavor{PromptFlavor::base};
    std::string instruction;  ///< sent as the system message
    std::string user_template{"{input}"};

    [[nodiscard]] std::string render_user(std::string_view input) const;
};

inline constexpr std::string_view input_placeholder = "{input}";

/// Built-in template for a generation task. Moderation has no template and
/// raises Error("unknown-task").
PromptTemplate prompt_for(tasks::TaskKind task, PromptFlavor flavor);
PromptTemplate prompt_for(std::string_view task_name, PromptFlavor flavor);

/// Throws Error("invalid-template") unless the user template contains the
/// placeholder exactly once.
void validate(const PromptTemplate &t);

}  // namespace luxgen::baseline
