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

#include "luxgen/baseline/prompts.hpp"

#include "luxgen/common/error.hpp"

namespace luxgen::baseline {

using tasks::TaskKind;

std::string_view to_string(PromptFlavor flavor) {
    return flavor == PromptFlavor::base ? "base" : "return_only";
}

PromptFlavor parse_flavor(std::string_view name) {
    if (name == "base" || name == "a" || name == "A") {
        return PromptFlavor::base;
    }
    if (name == "return_only" || name == "b" || name == "B") {
        return PromptFlavor::return_only;
    }
    throw Error("unknown-flavor", "unknown prompt flavor '" + std::string(name) + "'");
}

std::string PromptTemplate::render_user(std::string_view input) const {
    std::string out = user_template;
    const auto at = out.find(input_placeholder);
    out.replace(at, input_placeholder.size(), input);
    return out;
}

void validate(const PromptTemplate &t) {
    const auto first = t.user_template.find(input_placeholder);
    if (first == std::string::npos ||
        t.user_template.find(input_placeholder, first + input_placeholder.size()) != std::string::npos) {
        throw Error("invalid-template", "user template must contain {input} exactly once");
    }
}

PromptTemplate prompt_for(TaskKind task, PromptFlavor flavor) {
    PromptTemplate t;
    t.task = task;
    t.flavor = flavor;
    const bool base = flavor == PromptFlavor::base;
    switch (task) {
        case TaskKind::headline:
            t.instruction = base ? "You are an editorial assistant for a Luxembourgish news outlet. Your task is to "
                                   "generate a news headline for a news article, based on the content of the article."
                                 : "You are an editorial assistant for a Luxembourgish news outlet. Your task is to "
                                   "generate a news headline for the following news article, based on the content of "
                                   "the article. Only return the title.";
            break;
        case TaskKind::positive_comment:
            t.instruction = base ? "You are a Luxembourgish social media user. Your task is to generate a positive user "
                                   "comment in response to a news article. The comment should be closest to a comment "
                                   "that is most likely to get the most upvotes or thumbs up from other users."
                                 : "You are a Luxembourgish social media user. Your task is to generate a user comment "
                                   "in response to a news article. The comment should be closest to a comment that is "
                                   "most likely to get the most upvotes or thumbs up from other users. Only return the "
                                   "comment.";
            break;
        case TaskKind::negative_comment:
            t.instruction = "You are a Luxembourgish social media user. Your task is to generate a user comment in "
                            "response to a news article. The comment should be closest to a comment that is most "
                            "likely to get the most downvotes or thumbs down from other users.";
            if (!base) {
                t.instruction += " Only return the comment.";
            }
            break;
        case TaskKind::description:
            t.instruction = base ? "Based on a Luxembourgish Wikipedia article as input, your task is to generate a "
                                   "short description in Luxembourgish of the thing that is being described. The "
                                   "description can be as short as a word, and no longer than a short sentence."
                                 : "Based on a Luxembourgish Wikipedia article as input, your task is to generate the "
                                   "corresponding short Wikipedia description in Luxembourgish of the thing that is "
                                   "being described. The general description should not be longer than a couple of "
                                   "words. Only return the description.";
            break;
        case TaskKind::moderation:
            throw Error("unknown-task", "no prompt template exists for the moderation task");
    }
    return t;
}

PromptTemplate prompt_for(std::string_view task_name, PromptFlavor flavor) {
    return prompt_for(tasks::parse_task(task_name), flavor);
}

}  // namespace luxgen::baseline
