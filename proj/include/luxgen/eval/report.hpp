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

#include "luxgen/eval/classification.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace luxgen::eval {

// ---- predictions file --------------------------------------------------------

struct Prediction {
    std::string task;
    std::string id;
    std::string prediction;
    bool operator==(const Prediction &) const = default;
};

/// One JSON object per line: {"id", "prediction", "task"}.
void write_predictions(const std::filesystem::path &path, const std::vector<Prediction> &predictions);
std::vector<Prediction> read_predictions(const std::filesystem::path &path);

// ---- score tables ------------------------------------------------------------

/// Models as rows, tasks as columns. Missing cells render as "-".
struct ScoreTable {
    std::vector<std::string> models;
    std::vector<std::string> tasks;
    std::vector<std::string> headers;  ///< column titles, defaults to task names
    std::map<std::pair<std::string, std::string>, double> scores;
    int decimals{4};
    bool mark_best{true};

    void set(const std::string &model, const std::string &task, double score);
    [[nodiscard]] std::optional<double> get(const std::string &model, const std::string &task) const;
    /// Models holding the best score of a column (after rounding to
    /// `decimals`); several on ties.
    [[nodiscard]] std::vector<std::string> best(const std::string &task) const;
};

/// Aligned plain-text table; best cells carry a trailing '*'.
std::string render_text(const ScoreTable &table);
/// Tab-separated variant with the same marks.
std::string render_tsv(const ScoreTable &table);

struct ClassificationRow {
    std::string model;
    ClassificationReport report;
};

/// Per-class P/R/F1, weighted averages and macro F1, one model per row.
std::string render_classification_text(const std::vector<ClassificationRow> &rows);
std::string render_classification_tsv(const std::vector<ClassificationRow> &rows);

// ---- manual evaluation ---------------------------------------------------------

struct ManualItem {
    std::string task;
    std::string id;
    std::string input;
    std::string target;
    std::string prediction;
};

/// Per task: items in natural id order, shuffled with a seed derived from
/// (seed, task), first n kept. Tasks appear in name order. Throws
/// Error("sample-too-large") when a task has fewer than n items.
std::vector<ManualItem> sample_manual(const std::vector<ManualItem> &items, std::size_t n, std::uint64_t seed);

/// Tab-separated sheet: task, id, input, target, prediction and empty
/// task / content / correctness rating columns.
std::string render_sheet(const std::vector<ManualItem> &rows);

}  // namespace luxgen::eval
