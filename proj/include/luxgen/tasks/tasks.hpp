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

#include "luxgen/common/sequence.hpp"
#include "luxgen/corpus/document.hpp"
#include "luxgen/subword/vocabulary.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace luxgen::tasks {

enum class TaskKind { headline, positive_comment, negative_comment, description, moderation };

inline constexpr TaskKind all_tasks[] = {TaskKind::headline, TaskKind::positive_comment, TaskKind::negative_comment,
                                         TaskKind::description, TaskKind::moderation};
inline constexpr TaskKind generation_tasks[] = {TaskKind::headline, TaskKind::positive_comment,
                                                TaskKind::negative_comment, TaskKind::description};

std::string_view to_string(TaskKind task);
/// Throws Error("unknown-task").
TaskKind parse_task(std::string_view name);

/// Text prepended to every model input so one model can serve all tasks.
std::string_view task_prefix(TaskKind task);

struct TaskExample {
    TaskKind task{TaskKind::headline};
    std::string id;  ///< "<task>:<first source id>"
    std::string input_text;
    std::string target_text;
    /// source_ids[0] is the grouping key for splits (the article for
    /// article-derived tasks).
    std::vector<std::string> source_ids;
    /// Comment tasks: the article had a single voted comment, which is then
    /// both the positive and the negative target.
    bool degenerate{false};

    bool operator==(const TaskExample &) const = default;
};

struct BuildReport {
    std::size_t considered{0};
    std::size_t emitted{0};
    std::size_t skipped_missing_field{0};  ///< no title / description / status / votes
    std::size_t skipped_empty_text{0};
    std::size_t skipped_dangling{0};  ///< comments whose article_id resolves to nothing
    std::size_t skipped_unvoted_articles{0};
    std::size_t degenerate{0};
    std::map<std::string, std::size_t> class_counts;  ///< moderation only
    /// Majority / minority class count (moderation only; 0 when a class is empty).
    double imbalance_ratio{0.0};

    bool operator==(const BuildReport &) const = default;
};

struct BuildResult {
    std::vector<TaskExample> examples;  ///< in natural order of their first source id
    BuildReport report;
};

/// News documents with a title. Input is the body with the first verbatim
/// occurrence of the title removed; target is the title.
BuildResult build_headline(const std::vector<corpus::Document> &store);

enum class Polarity { positive, negative };

/// Up/down ratio (up + 1) / (down + 1) per voted comment; per article the
/// max (positive) or min (negative) comment is selected, ties broken by
/// higher up + down, then by smaller comment id. A comment is voted when
/// up + down > 0.
BuildResult build_comments(const std::vector<corpus::Document> &store, Polarity polarity);

/// Wiki documents with a short description.
BuildResult build_description(const std::vector<corpus::Document> &store);

/// Comments with a moderation status; target is the status word.
BuildResult build_moderation(const std::vector<corpus::Document> &store);

BuildResult build_task(TaskKind task, const std::vector<corpus::Document> &store);

/// -1, 0, 1 as the up/down ratio of comment a is below, equal to, above b's.
int compare_ratio(std::int64_t up_a, std::int64_t down_a, std::int64_t up_b, std::int64_t down_b);

struct TaskSplit {
    TaskKind task{TaskKind::headline};
    std::vector<TaskExample> train;
    std::vector<TaskExample> test;
    std::uint64_t seed{0};
    std::string mode;  ///< "fraction" or "counts"
    double test_fraction{0.0};
    std::size_t unused{0};  ///< examples left out in counts mode
};

/// Groups examples by source_ids[0], sorts the groups naturally, shuffles
/// them with `seed` and moves whole groups into test while the test side
/// stays within round(n * test_fraction).
TaskSplit split(const std::vector<TaskExample> &examples, double test_fraction, std::uint64_t seed);

/// Counts mode: same shuffled group order; test receives exactly
/// `test_count` examples, train exactly `train_count`, the rest are unused.
/// Throws Error("insufficient-examples") when that is impossible.
TaskSplit split_counts(const std::vector<TaskExample> &examples, std::size_t train_count, std::size_t test_count,
                       std::uint64_t seed);

struct PublishedCounts {
    std::size_t train;
    std::size_t test;
};

/// Train/test sizes listed for the original data set (generation tasks only).
std::optional<PublishedCounts> published_counts(TaskKind task);

/// Human-readable notes on published sizes that do not agree with each other
/// (stated split ratio vs. listed counts, listed totals vs. row sums).
std::vector<std::string> published_count_notes();

// ---- task files --------------------------------------------------------------

inline constexpr int task_builder_version = 1;

void write_examples(const std::filesystem::path &path, const std::vector<TaskExample> &examples);
std::vector<TaskExample> read_examples(const std::filesystem::path &path);

/// <dir>/train.jsonl, <dir>/test.jsonl and <dir>/manifest.json.
void write_split(const std::filesystem::path &dir, const TaskSplit &split, const BuildReport &report);
TaskSplit read_split(const std::filesystem::path &dir);

/// Encoder input = task prefix + input text, target = target text, both
/// encoded with eos.
SequencePair encode_example(const TaskExample &example, const subword::Vocabulary &vocab);

}  // namespace luxgen::tasks
